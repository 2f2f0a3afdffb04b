#include "pqb/operators.hpp"

#include <algorithm>
#include <cmath>

namespace pqb {

template <>
BasisWeights<double> basis_weights<double>(int n, const PQParams<double>& pq, const double& x) {
  if (n < 1) throw std::invalid_argument("basis_weights: n must be >= 1");
  detail::check_eval_point(x);
  BasisWeights<double> out;
  out.n = n;
  out.x = x;
  out.w.assign(static_cast<std::size_t>(n) + 1, 0.0);
  if (x == 0.0) {
    out.w[0] = 1.0;
    return out;
  }
  if (x == 1.0) {
    out.w[static_cast<std::size_t>(n)] = 1.0;
    return out;
  }
  const double lp = std::log(pq.p);
  const double lx = std::log(x);
  // log [j] for j = 1..n
  std::vector<double> lbracket(static_cast<std::size_t>(n) + 1, 0.0);
  {
    double bracket = 0.0, ppow = 1.0;
    for (int j = 1; j <= n; ++j) {
      bracket = ppow + pq.q * bracket;
      ppow *= pq.p;
      lbracket[static_cast<std::size_t>(j)] = std::log(bracket);
    }
  }
  // log [n choose k] via the multiplicative recurrence
  std::vector<double> lbinom(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 0; k < n; ++k)
    lbinom[static_cast<std::size_t>(k) + 1] = lbinom[static_cast<std::size_t>(k)] +
                                              lbracket[static_cast<std::size_t>(n - k)] -
                                              lbracket[static_cast<std::size_t>(k) + 1];
  // prefix sums of log(p^s - q^s x); factors are > 0 for 0 < x < 1
  std::vector<double> lfactor_prefix(static_cast<std::size_t>(n) + 1, 0.0);
  {
    double ppow = 1.0, qpow = 1.0;
    for (int s = 0; s < n; ++s) {
      lfactor_prefix[static_cast<std::size_t>(s) + 1] =
          lfactor_prefix[static_cast<std::size_t>(s)] + std::log(ppow - qpow * x);
      ppow *= pq.p;
      qpow *= pq.q;
    }
  }
  const double norm = static_cast<double>(n) * (n - 1) / 2.0 * lp;
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    const double lw = static_cast<double>(k) * (k - 1) / 2.0 * lp + lbinom[ku] +
                      static_cast<double>(k) * lx + lfactor_prefix[static_cast<std::size_t>(n - k)] -
                      norm;
    out.w[ku] = std::exp(lw);
    sum += out.w[ku];
  }
  if (std::abs(sum - 1.0) > 1e-13)
    for (auto& w : out.w) w /= sum;
  return out;
}

double apply_higher(const FunctionBundle& bundle, int r, int n, const PQParamsF& pq, double x) {
  if (r < 0 || r > bundle.r_max())
    throw std::invalid_argument("apply_higher: order exceeds available derivatives of " + bundle.name);
  const auto bw = basis_weights(n, pq, x);
  const auto ns = nodes(n, pq);
  double acc = 0.0;
  for (int k = 0; k <= n; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    if (bw.w[ku] == 0.0) continue;
    const double node = ns.nodes[ku];
    const double dx = x - node;
    double taylor = 0.0, pw = 1.0, fact = 1.0;
    for (int i = 0; i <= r; ++i) {
      taylor += bundle.deriv(i)(node) * pw / fact;
      pw *= dx;
      fact *= static_cast<double>(i + 1);
    }
    acc += bw.w[ku] * taylor;
  }
  return acc;
}

SymbolicOperator::SymbolicOperator(int n, PQParamsR pq, int max_monomial_degree)
    : n_(n), pq_(std::move(pq)) {
  if (n < 1) throw std::invalid_argument("SymbolicOperator: n must be >= 1");
  nodes_ = nodes(n_, pq_).nodes;
  // weight polynomials w_k(x) = p^{k(k-1)/2} [n k] x^k prod(p^s - q^s x) / p^{n(n-1)/2}
  weights_.resize(static_cast<std::size_t>(n_) + 1);
  std::vector<RatPoly> factor_prefix(static_cast<std::size_t>(n_) + 1, RatPoly(Rational(1)));
  {
    Rational ppow(1), qpow(1);
    for (int s = 0; s < n_; ++s) {
      factor_prefix[static_cast<std::size_t>(s) + 1] =
          factor_prefix[static_cast<std::size_t>(s)] * RatPoly::from_coefficients({ppow, -qpow});
      ppow *= pq_.p;
      qpow *= pq_.q;
    }
  }
  const Rational p_tri_n = rational_pow(pq_.p, static_cast<long>(n_) * (n_ - 1) / 2);
  Rational binom(1), p_tri_k(1), p_pow(1);
  for (int k = 0; k <= n_; ++k) {
    if (k > 0) {
      binom = binom * pq_int(n_ - k + 1, pq_) / pq_int(k, pq_);
      p_tri_k *= p_pow;
      p_pow *= pq_.p;
    }
    const Rational scale = p_tri_k * binom / p_tri_n;
    weights_[static_cast<std::size_t>(k)] =
        RatPoly::monomial(static_cast<std::size_t>(k), scale) *
        factor_prefix[static_cast<std::size_t>(n_ - k)];
  }
  const int prepared = max_monomial_degree < 0 ? n_ : max_monomial_degree;
  images_.reserve(static_cast<std::size_t>(prepared) + 1);
  std::vector<Rational> node_pow(nodes_.size(), Rational(1));
  for (int j = 0; j <= prepared; ++j) {
    RatPoly img;
    for (std::size_t k = 0; k < weights_.size(); ++k) {
      if (j > 0) node_pow[k] *= nodes_[k];
      img += weights_[k] * node_pow[k];
    }
    images_.push_back(std::move(img));
  }
}

RatPoly SymbolicOperator::compute_image(int j) const {
  RatPoly img;
  for (std::size_t k = 0; k < weights_.size(); ++k)
    img += weights_[k] * rational_pow(nodes_[k], j);
  return img;
}

RatPoly SymbolicOperator::monomial_image(int j) const {
  if (j < 0) throw std::invalid_argument("monomial_image: degree must be nonnegative");
  if (static_cast<std::size_t>(j) < images_.size()) return images_[static_cast<std::size_t>(j)];
  return compute_image(j);
}

RatPoly SymbolicOperator::apply(const RatPoly& f) const {
  RatPoly out;
  for (int j = 0; j <= f.degree(); ++j) {
    const Rational c = f.coefficient(static_cast<std::size_t>(j));
    if (c != 0) out += monomial_image(j) * c;
  }
  return out;
}

RatPoly apply_poly(const RatPoly& poly, int n, const PQParamsR& pq) {
  return SymbolicOperator(n, pq, std::max(0, poly.degree())).apply(poly);
}

RatPoly apply_higher_poly(const RatPoly& f, int r, int n, const PQParamsR& pq) {
  if (r < 0) throw std::invalid_argument("apply_higher_poly: r must be nonnegative");
  SymbolicOperator op(n, pq, 0);
  // derivative chain f^(0..r)
  std::vector<RatPoly> ders{f};
  for (int i = 1; i <= r; ++i) ders.push_back(ders.back().derivative());
  RatPoly out;
  const auto& xs = op.node_points();
  for (std::size_t k = 0; k < op.weight_polynomials().size(); ++k) {
    RatPoly taylor;
    RatPoly pw(Rational(1));
    const RatPoly shifted = RatPoly::from_coefficients({-xs[k], Rational(1)});  // x - x_k
    Rational fact(1);
    for (int i = 0; i <= r; ++i) {
      if (i > 0) {
        pw = pw * shifted;
        fact *= Rational(i);
      }
      taylor += pw * (ders[static_cast<std::size_t>(i)](xs[k]) / fact);
    }
    out += op.weight_polynomials()[k] * taylor;
  }
  return out;
}

double q_bernstein(const std::function<double(double)>& f, int n, double q, double x) {
  if (!(q > 0.0) || !(q < 1.0)) throw std::invalid_argument("q_bernstein: need 0 < q < 1");
  if (n < 1) throw std::invalid_argument("q_bernstein: n must be >= 1");
  detail::check_eval_point(x);
  std::vector<double> qint(static_cast<std::size_t>(n) + 1, 0.0);
  for (int j = 1; j <= n; ++j)
    qint[static_cast<std::size_t>(j)] = qint[static_cast<std::size_t>(j) - 1] * q + 1.0;
  double acc = 0.0;
  double binom = 1.0, xpow = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      binom = binom * qint[static_cast<std::size_t>(n - k + 1)] / qint[static_cast<std::size_t>(k)];
      xpow *= x;
    }
    double tail = 1.0, qpow = 1.0;
    for (int s = 0; s < n - k; ++s) {
      tail *= (1.0 - qpow * x);
      qpow *= q;
    }
    acc += binom * xpow * tail * f(qint[static_cast<std::size_t>(k)] / qint[static_cast<std::size_t>(n)]);
  }
  return acc;
}

double classical_bernstein(const std::function<double(double)>& f, int n, double x) {
  if (n < 1) throw std::invalid_argument("classical_bernstein: n must be >= 1");
  detail::check_eval_point(x);
  if (x == 0.0) return f(0.0);
  if (x == 1.0) return f(1.0);
  // w_0 = (1-x)^n, then w_{k+1} = w_k * ((n-k)/(k+1)) * (x/(1-x))
  double w = std::pow(1.0 - x, n);
  const double ratio = x / (1.0 - x);
  double acc = 0.0;
  for (int k = 0; k <= n; ++k) {
    acc += w * f(static_cast<double>(k) / n);
    w *= ratio * static_cast<double>(n - k) / static_cast<double>(k + 1);
  }
  return acc;
}

}  // namespace pqb
