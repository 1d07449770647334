#include "enpar/rational.hpp"

#include <limits>

namespace enpar {

Rational parse_rational(const std::string& text) {
  auto bad = [&] {
    throw std::invalid_argument("malformed rational '" + text + "'");
  };
  if (text.empty()) bad();
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Int(text));
    Int num(text.substr(0, slash));
    Int den(text.substr(slash + 1));
    if (den <= 0) bad();
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    bad();
  }
  return Rational();  // unreachable
}

std::string rational_str(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

std::size_t rational_bits(const Rational& q) {
  Int n = abs(numerator(q)), d = denominator(q);
  std::size_t bits = 2;  // sign + separator
  bits += n == 0 ? 1 : msb(n) + 1;
  bits += d == 0 ? 1 : msb(d) + 1;
  return bits;
}

long long to_ll_checked(const Int& v, const char* what) {
  if (v > std::numeric_limits<long long>::max() ||
      v < std::numeric_limits<long long>::min()) {
    throw std::overflow_error(std::string(what) + " does not fit 64 bits");
  }
  return static_cast<long long>(v);
}

}  // namespace enpar
