#include "pqb/pq_core.hpp"

namespace pqb {

RatPoly pq_power_rising(const Rational& a, int n, const PQParamsR& pq) {
  if (n < 0) throw std::invalid_argument("pq_power_rising: n must be nonnegative");
  RatPoly acc(Rational(1));
  Rational ppow(1), qpow(1);
  for (int s = 0; s < n; ++s) {
    acc = acc * RatPoly::from_coefficients({ppow * a, qpow});
    ppow *= pq.p;
    qpow *= pq.q;
  }
  return acc;
}

RatPoly pq_derivative(const RatPoly& poly, const PQParamsR& pq) {
  if (poly.degree() < 1) return RatPoly{};
  std::vector<Rational> out(static_cast<std::size_t>(poly.degree()));
  for (int k = 1; k <= poly.degree(); ++k)
    out[static_cast<std::size_t>(k - 1)] = poly.coefficient(static_cast<std::size_t>(k)) * pq_int(k, pq);
  return RatPoly::from_coefficients(std::move(out));
}

}  // namespace pqb
