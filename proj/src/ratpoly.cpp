#include "pqb/ratpoly.hpp"

#include <stdexcept>

namespace pqb {

RatPoly::RatPoly(Rational constant) {
  if (constant != 0) coeffs_.push_back(std::move(constant));
}

RatPoly RatPoly::monomial(std::size_t degree, Rational coeff) {
  RatPoly p;
  if (coeff != 0) {
    p.coeffs_.assign(degree + 1, Rational(0));
    p.coeffs_[degree] = std::move(coeff);
  }
  return p;
}

RatPoly RatPoly::from_coefficients(std::vector<Rational> coeffs) {
  RatPoly p;
  p.coeffs_ = std::move(coeffs);
  p.trim();
  return p;
}

Rational RatPoly::coefficient(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : Rational(0);
}

Rational RatPoly::operator()(const Rational& x) const {
  Rational v(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * x + *it;
  return v;
}

RatPoly& RatPoly::operator+=(const RatPoly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  trim();
  return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  trim();
  return *this;
}

RatPoly& RatPoly::operator*=(const Rational& s) {
  if (s == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& c : coeffs_) c *= s;
  return *this;
}

RatPoly RatPoly::operator-() const {
  RatPoly out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return RatPoly{};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return RatPoly::from_coefficients(std::move(out));
}

RatPoly RatPoly::scale_argument(const Rational& c) const {
  std::vector<Rational> out(coeffs_.size());
  Rational cp(1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    out[i] = coeffs_[i] * cp;
    cp *= c;
  }
  return from_coefficients(std::move(out));
}

RatPoly RatPoly::derivative() const {
  if (coeffs_.size() <= 1) return RatPoly{};
  std::vector<Rational> out(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = coeffs_[i] * Rational(i);
  return from_coefficients(std::move(out));
}

std::pair<RatPoly, RatPoly> RatPoly::divide(const RatPoly& divisor) const {
  if (divisor.is_zero()) throw std::invalid_argument("RatPoly::divide: division by zero polynomial");
  RatPoly remainder = *this;
  const int d = divisor.degree();
  if (remainder.degree() < d) return {RatPoly{}, remainder};
  std::vector<Rational> q(remainder.coeffs_.size() - d, Rational(0));
  const Rational& lead = divisor.coeffs_.back();
  while (remainder.degree() >= d) {
    const int shift = remainder.degree() - d;
    const Rational c = remainder.coeffs_.back() / lead;
    q[shift] = c;
    for (std::size_t i = 0; i < divisor.coeffs_.size(); ++i)
      remainder.coeffs_[shift + i] -= c * divisor.coeffs_[i];
    remainder.trim();
    if (remainder.is_zero()) break;
  }
  return {from_coefficients(std::move(q)), remainder};
}

void RatPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

}  // namespace pqb
