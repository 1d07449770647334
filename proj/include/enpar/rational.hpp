#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace enpar {

using Int = boost::multiprecision::cpp_int;

// Exact rational arithmetic. cpp_rational keeps gcd(|num|, den) = 1 and den > 0,
// which is exactly the invariant the solvers rely on. No floating point anywhere
// in solver paths.
using Rational = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rational& q) { return numerator(q); }
inline Int rat_den(const Rational& q) { return denominator(q); }

// Largest integer <= q.
inline Int rat_floor(const Rational& q) {
  Int n = numerator(q), d = denominator(q);
  Int t = n / d;
  if (n < 0 && n % d != 0) --t;
  return t;
}

inline Int int_lcm(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd(a, b) * b;
}

// Parses "n" or "n/d" with optional sign; throws std::invalid_argument on junk.
Rational parse_rational(const std::string& text);

// "n" when integral, "n/d" otherwise.
std::string rational_str(const Rational& q);

// Bits needed to write the rational down (numerator + denominator), used for
// the LP solution-size assertions.
std::size_t rational_bits(const Rational& q);

// Checked conversion for solver bounds that must fit machine integers.
long long to_ll_checked(const Int& v, const char* what);

}  // namespace enpar
