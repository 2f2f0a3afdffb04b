#pragma once

#include <span>
#include <stdexcept>

#include "pqb/operators.hpp"

namespace pqb {

enum class MomentKind { PQPower, Ordinary };

/// B((t-x)^m; x) as an exact polynomial in x. PQPower uses the twisted
/// power prod_{s=0}^{m-1}(p^s t - q^s x), Ordinary the plain (t-x)^m.
struct MomentPoly {
  int n = 0;
  int m = 0;
  MomentKind kind = MomentKind::PQPower;
  RatPoly poly;
};

/// Factorization of the order-m moment polynomial as
/// x(1-x) / [n]^{floor((m+1)/2)} * sum_k b_k x^k.
struct MomentDecomposition {
  int n = 0;
  int m = 0;
  int exponent = 0;          // floor((m+1)/2)
  std::vector<Rational> b;   // quotient coefficients, degree <= m-2
  RatPoly residual;          // remainder of the x(1-x) division; zero on success
};

class StructureViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact twisted central moment B(prod_s (p^s t - q^s x); x).
MomentPoly central_moment_pq(int n, int m, const PQParamsR& pq);

/// Exact ordinary central moment B((t-x)^m; x).
MomentPoly central_moment_ordinary(int n, int m, const PQParamsR& pq);

/// Pointwise ordinary central moment by direct summation.
double central_moment_ordinary(int n, int m, const PQParamsF& pq, double x);

/// sum_k w_k |x_k - x|^m.
template <class S>
S absolute_moment(int n, int m, const PQParams<S>& pq, const S& x) {
  if (m < 0) throw std::invalid_argument("absolute_moment: m must be nonnegative");
  const auto bw = basis_weights(n, pq, x);
  const auto ns = nodes(n, pq);
  S acc(0);
  for (std::size_t k = 0; k < bw.w.size(); ++k) {
    if (bw.w[k] == S(0)) continue;
    S d = ns.nodes[k] - x;
    if (d < S(0)) d = -d;
    S pw(1);
    for (int i = 0; i < m; ++i) pw *= d;
    acc += bw.w[k] * pw;
  }
  return acc;
}

/// Twisted absolute moment: sum_k w_k prod_{s=0}^{m-1} |p^s x_k - q^s x|.
template <class S>
S absolute_moment_pq(int n, int m, const PQParams<S>& pq, const S& x) {
  if (m < 0) throw std::invalid_argument("absolute_moment_pq: m must be nonnegative");
  const auto bw = basis_weights(n, pq, x);
  const auto ns = nodes(n, pq);
  S acc(0);
  for (std::size_t k = 0; k < bw.w.size(); ++k) {
    if (bw.w[k] == S(0)) continue;
    S prod(1);
    S ppow(1), qpow(1);
    for (int s = 0; s < m; ++s) {
      S f = ppow * ns.nodes[k] - qpow * x;
      if (f < S(0)) f = -f;
      prod *= f;
      ppow *= pq.p;
      qpow *= pq.q;
    }
    acc += bw.w[k] * prod;
  }
  return acc;
}

/// LHS minus RHS of the exact recurrence linking the order-(m+1) twisted
/// moment to the (p,q)-derivative of the rescaled order-m moment; the zero
/// polynomial when the recurrence holds.
RatPoly moment_recurrence_residual(int n, int m, const PQParamsR& pq);

/// Divides the twisted moment polynomial by x(1-x) and rescales by
/// [n]^{floor((m+1)/2)}. Throws StructureViolation when the division leaves
/// a remainder or the quotient degree exceeds m-2. Requires m >= 2.
MomentDecomposition decompose_moment(int n, int m, const PQParamsR& pq);

enum class AbsoluteMomentKind { PQPower, Ordinary };

/// Grid maxima of |moment| * [n]^e / (x(1-x)) over x = i/grid, i = 1..grid-1.
struct ConstantEstimate {
  int m = 0;
  int c_exponent = 0;      // floor((m+1)/2), for the signed twisted moment
  double k_exponent = 0;   // m/2, for the absolute moment
  double c_hat = 0;
  double k_hat = 0;
};

ConstantEstimate estimate_constants(int m, std::span<const int> n_list,
                                    std::span<const PQParamsF> param_list,
                                    AbsoluteMomentKind kind = AbsoluteMomentKind::PQPower,
                                    int grid = 1024);

}  // namespace pqb
