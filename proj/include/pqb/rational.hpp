#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace pqb {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// base^e with integer e; e < 0 requires base != 0.
Rational rational_pow(const Rational& base, long e);

/// Canonical "num/den" rendering, denominator always present ("0/1", "-3/2").
std::string to_fraction_string(const Rational& v);

/// Parses "num", "-num" or "num/den" (den > 0). No decimals, no whitespace.
std::optional<Rational> parse_rational(std::string_view s);

inline double to_double(const Rational& v) { return v.convert_to<double>(); }

}  // namespace pqb
