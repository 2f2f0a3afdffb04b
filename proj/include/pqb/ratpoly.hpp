#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "pqb/rational.hpp"

namespace pqb {

/// Univariate polynomial with exact rational coefficients, index = degree.
/// Canonical form: no stored trailing zeros; the zero polynomial is empty.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(Rational constant);
  static RatPoly monomial(std::size_t degree, Rational coeff = Rational(1));
  static RatPoly from_coefficients(std::vector<Rational> coeffs);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  Rational coefficient(std::size_t k) const;
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  Rational operator()(const Rational& x) const;

  RatPoly& operator+=(const RatPoly& other);
  RatPoly& operator-=(const RatPoly& other);
  RatPoly& operator*=(const Rational& s);
  RatPoly operator-() const;

  friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
  friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(RatPoly a, const Rational& s) { return a *= s; }
  friend RatPoly operator*(const Rational& s, RatPoly a) { return a *= s; }
  friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.coeffs_ == b.coeffs_; }

  /// Substitutes x -> c*x.
  RatPoly scale_argument(const Rational& c) const;

  /// Ordinary derivative d/dx.
  RatPoly derivative() const;

  /// Long division; returns (quotient, remainder). Divisor must be nonzero.
  std::pair<RatPoly, RatPoly> divide(const RatPoly& divisor) const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

}  // namespace pqb
