#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace gwq {

// Exact rational scalar. cpp_rational keeps values in lowest terms with a
// positive denominator, which is the canonical form we serialize.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational literal: " + s);
  }
}

inline std::string rational_to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

// Gamma(x + steps) / Gamma(x) at x = base + 1/2, as the ascending product
// (x)(x+1)...(x+steps-1).  Rational because the two arguments differ by an
// integer.
inline Rational half_integer_gamma_ratio(long base, unsigned long steps) {
  Rational x = Rational(2 * base + 1, 2);
  Rational out = 1;
  for (unsigned long j = 0; j < steps; ++j) out *= x + Rational(j);
  return out;
}

}  // namespace gwq
