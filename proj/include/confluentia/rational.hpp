#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

#include "confluentia/errors.hpp"

namespace confluentia {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational scalar. Always stored reduced with positive denominator;
/// zero is 0/1. Carries every equation coefficient and every s-rank.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numer(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denom(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Rational make_rational(long long num, long long den = 1) {
  if (den == 0) throw ParseError("rational with zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

/// Parses "num", "num/den" or "-num/den" (exact decimal integers only).
inline Rational rational_from_string(std::string_view s) {
  auto bad = [&] { return ParseError("invalid rational literal: '" + std::string(s) + "'"); };
  size_t start = s.find_first_not_of(" \t");
  size_t stop = s.find_last_not_of(" \t");
  if (start == std::string_view::npos) throw bad();
  s = s.substr(start, stop - start + 1);
  auto slash = s.find('/');
  auto parse_int = [&](std::string_view t) -> BigInt {
    if (t.empty()) throw bad();
    size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) throw bad();
    for (size_t j = i; j < t.size(); ++j)
      if (t[j] < '0' || t[j] > '9') throw bad();
    return BigInt(std::string(t));
  };
  if (slash == std::string_view::npos) return Rational(parse_int(s));
  BigInt num = parse_int(s.substr(0, slash));
  BigInt den = parse_int(s.substr(slash + 1));
  if (den == 0) throw bad();
  return Rational(num, den);
}

/// "num" when the denominator is 1, else "num/den".
inline std::string to_string(const Rational& r) {
  if (denom(r) == 1) return numer(r).str();
  return numer(r).str() + "/" + denom(r).str();
}

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

inline bool is_integer(const Rational& r) { return denom(r) == 1; }
inline bool is_half_integer(const Rational& r) { return denom(r) == 2; }

inline Rational rational_pow(const Rational& base, int exp) {
  Rational acc(1);
  for (int i = 0; i < exp; ++i) acc *= base;
  return acc;
}

/// Exact square root when r is the square of a rational, nullopt otherwise.
inline std::optional<Rational> exact_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  BigInt n = numer(r), d = denom(r);
  BigInt sn = boost::multiprecision::sqrt(n), sd = boost::multiprecision::sqrt(d);
  if (sn * sn != n || sd * sd != d) return std::nullopt;
  return Rational(sn, sd);
}

}  // namespace confluentia
