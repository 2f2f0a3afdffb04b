#pragma once

#include <stdexcept>
#include <utility>

#include "pqb/pq_params.hpp"
#include "pqb/ratpoly.hpp"

namespace pqb {

/// [n] = sum_{i=0}^{n-1} p^i q^{n-1-i}, evaluated by Horner over the sum form.
template <class S>
S pq_int(int n, const PQParams<S>& pq) {
  if (n < 0) throw std::invalid_argument("pq_int: n must be nonnegative");
  S v(0);
  S ppow(1);
  for (int j = 0; j < n; ++j) {
    v = ppow + pq.q * v;
    ppow *= pq.p;
  }
  return v;
}

/// [n]! = [1][2]...[n]; empty product for n = 0.
template <class S>
S pq_factorial(int n, const PQParams<S>& pq) {
  if (n < 0) throw std::invalid_argument("pq_factorial: n must be nonnegative");
  S v(1);
  for (int i = 1; i <= n; ++i) v *= pq_int(i, pq);
  return v;
}

/// [n choose k] via the multiplicative recurrence C(n,k+1) = C(n,k)·[n-k]/[k+1].
template <class S>
S pq_binomial(int n, int k, const PQParams<S>& pq) {
  if (n < 0 || k < 0 || k > n) throw std::invalid_argument("pq_binomial: need 0 <= k <= n");
  S c(1);
  for (int j = 0; j < k; ++j) c = c * pq_int(n - j, pq) / pq_int(j + 1, pq);
  return c;
}

/// (a + x)^n_{p,q} = prod_{s=0}^{n-1} (p^s a + q^s x), expanded in x.
RatPoly pq_power_rising(const Rational& a, int n, const PQParamsR& pq);

/// Termwise x^k -> [k] x^{k-1}.
RatPoly pq_derivative(const RatPoly& poly, const PQParamsR& pq);

/// (f(px) - f(qx)) / ((p-q)x); undefined at x = 0 and rejected there.
template <class S, class F>
S pq_derivative_at(F&& f, const S& x, const PQParams<S>& pq) {
  if (x == S(0)) throw std::invalid_argument("pq_derivative_at: x must be nonzero");
  return (f(pq.p * x) - f(pq.q * x)) / ((pq.p - pq.q) * x);
}

}  // namespace pqb
