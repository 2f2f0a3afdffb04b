#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pqb/pq_core.hpp"

namespace pqb {

template <class S>
struct BasisWeights {
  int n = 0;
  S x{};
  std::vector<S> w;  // w_k = P_{n,k}(p,q;x) / p^{n(n-1)/2}, sums to 1
};

template <class S>
struct NodeSet {
  int n = 0;
  std::vector<S> nodes;  // x_{n,k} = p^{n-k} [k]/[n], strictly increasing, in [0,1]
};

namespace detail {

template <class S>
void check_eval_point(const S& x) {
  if (x < S(0) || x > S(1))
    throw std::invalid_argument("evaluation point must lie in [0,1]");
}

template <class S>
S pow_nonneg(S base, long e) {
  S out(1);
  while (e > 0) {
    if (e & 1L) out *= base;
    base *= base;
    e >>= 1L;
  }
  return out;
}

}  // namespace detail

template <class S>
NodeSet<S> nodes(int n, const PQParams<S>& pq) {
  if (n < 1) throw std::invalid_argument("nodes: n must be >= 1");
  NodeSet<S> out;
  out.n = n;
  out.nodes.resize(static_cast<std::size_t>(n) + 1);
  const S bn = pq_int(n, pq);
  S bracket(0);  // [k] via [k] = p^{k-1} + q [k-1]
  S ppow(1);
  out.nodes[0] = S(0);
  for (int k = 1; k <= n; ++k) {
    bracket = ppow + pq.q * bracket;
    ppow *= pq.p;
    out.nodes[static_cast<std::size_t>(k)] = detail::pow_nonneg(pq.p, n - k) * bracket / bn;
  }
  return out;
}

/// Exact basis weights (Rational and other exact scalar types).
template <class S>
BasisWeights<S> basis_weights(int n, const PQParams<S>& pq, const S& x) {
  if (n < 1) throw std::invalid_argument("basis_weights: n must be >= 1");
  detail::check_eval_point(x);
  BasisWeights<S> out;
  out.n = n;
  out.x = x;
  out.w.resize(static_cast<std::size_t>(n) + 1);
  // factor_prefix[j] = prod_{s=0}^{j-1} (p^s - q^s x)
  std::vector<S> factor_prefix(static_cast<std::size_t>(n) + 1, S(1));
  {
    S ppow(1), qpow(1);
    for (int s = 0; s < n; ++s) {
      factor_prefix[static_cast<std::size_t>(s) + 1] =
          factor_prefix[static_cast<std::size_t>(s)] * (ppow - qpow * x);
      ppow *= pq.p;
      qpow *= pq.q;
    }
  }
  const S p_tri_n = detail::pow_nonneg(pq.p, static_cast<long>(n) * (n - 1) / 2);
  S binom(1);    // [n choose k]
  S p_tri_k(1);  // p^{k(k-1)/2}
  S p_pow(1);    // p^{k-1}
  S x_pow(1);    // x^k
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      binom = binom * pq_int(n - k + 1, pq) / pq_int(k, pq);
      p_tri_k *= p_pow;  // tri(k) - tri(k-1) = k - 1
      p_pow *= pq.p;
      x_pow *= x;
    }
    out.w[static_cast<std::size_t>(k)] =
        p_tri_k * binom * x_pow * factor_prefix[static_cast<std::size_t>(n - k)] / p_tri_n;
  }
  return out;
}

/// Log-domain weights for double precision; all factors p^s - q^s x are
/// nonnegative on [0,1] for q < p, with zeros only at x in {0,1}.
template <>
BasisWeights<double> basis_weights<double>(int n, const PQParams<double>& pq, const double& x);

template <class S, class F>
S apply(F&& f, int n, const PQParams<S>& pq, const S& x) {
  const auto bw = basis_weights(n, pq, x);
  const auto ns = nodes(n, pq);
  S acc(0);
  for (int k = 0; k <= n; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    if (bw.w[ku] != S(0)) acc += bw.w[ku] * f(ns.nodes[ku]);
  }
  return acc;
}

struct LipschitzClass {
  double M = 0;
  double alpha = 1;
};

/// A target function with its analytic derivatives on [0,1].
struct FunctionBundle {
  std::string name;
  std::function<double(double)> f;
  std::vector<std::function<double(double)>> derivs;  // derivs[i] = f^(i+1)
  std::optional<LipschitzClass> lip;                  // class of f^(r_max), when known

  int r_max() const { return static_cast<int>(derivs.size()); }
  const std::function<double(double)>& deriv(int i) const {
    if (i < 0 || i > r_max()) throw std::invalid_argument("FunctionBundle: derivative order out of range");
    return i == 0 ? f : derivs[static_cast<std::size_t>(i - 1)];
  }
};

/// Order-r operator: each sampled value is replaced by the degree-r Taylor
/// polynomial of f at the node, evaluated at x. r = 0 coincides with apply.
double apply_higher(const FunctionBundle& bundle, int r, int n, const PQParamsF& pq, double x);

/// Exact image of a polynomial under the operator, with basis polynomials and
/// monomial images precomputed once per (n, p, q).
class SymbolicOperator {
 public:
  SymbolicOperator(int n, PQParamsR pq, int max_monomial_degree = -1);

  int degree() const { return n_; }
  const PQParamsR& params() const { return pq_; }
  const std::vector<RatPoly>& weight_polynomials() const { return weights_; }
  const std::vector<Rational>& node_points() const { return nodes_; }

  /// B(t^j; x) as a polynomial in x.
  RatPoly monomial_image(int j) const;

  RatPoly apply(const RatPoly& f) const;

 private:
  RatPoly compute_image(int j) const;

  int n_;
  PQParamsR pq_;
  std::vector<RatPoly> weights_;
  std::vector<Rational> nodes_;
  std::vector<RatPoly> images_;  // filled for 0..max_monomial_degree at construction
};

/// B(poly; x) expanded exactly as a polynomial in x.
RatPoly apply_poly(const RatPoly& poly, int n, const PQParamsR& pq);

/// Exact order-r image of a polynomial; reproduces polynomials of degree <= r.
RatPoly apply_higher_poly(const RatPoly& f, int r, int n, const PQParamsR& pq);

/// Phillips q-Bernstein operator, implemented independently of apply; the
/// p = 1 reduction target.
double q_bernstein(const std::function<double(double)>& f, int n, double q, double x);

/// Classical Bernstein operator; the p = 1, q -> 1 reduction target.
double classical_bernstein(const std::function<double(double)>& f, int n, double x);

}  // namespace pqb
