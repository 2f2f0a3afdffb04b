#include "pqb/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace pqb {

Rational rational_pow(const Rational& base, long e) {
  if (e < 0) {
    if (base == 0) throw std::invalid_argument("rational_pow: zero base with negative exponent");
    return rational_pow(Rational(1) / base, -e);
  }
  Rational result(1);
  Rational b = base;
  unsigned long k = static_cast<unsigned long>(e);
  while (k > 0) {
    if (k & 1UL) result *= b;
    b *= b;
    k >>= 1UL;
  }
  return result;
}

std::string to_fraction_string(const Rational& v) {
  return numerator(v).str() + "/" + denominator(v).str();
}

std::optional<Rational> parse_rational(std::string_view s) {
  auto is_int = [](std::string_view t, bool allow_sign) {
    if (t.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && t[0] == '-') i = 1;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) {
    if (!is_int(s, true)) return std::nullopt;
    return Rational(BigInt(std::string(s)));
  }
  const auto num = s.substr(0, slash);
  const auto den = s.substr(slash + 1);
  if (!is_int(num, true) || !is_int(den, false)) return std::nullopt;
  BigInt d{std::string(den)};
  if (d == 0) return std::nullopt;
  return Rational(BigInt(std::string(num)), d);
}

}  // namespace pqb
