#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace sixv {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Thrown when a rational expression is evaluated at a pole (z_j = q*z_i etc.).
struct singular_point : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Rat make_rat(long num, long den = 1) {
  if (den == 0) throw singular_point("zero denominator");
  return Rat(Int(num), Int(den));
}

// Serialized as "num/den" (canonical form, positive denominator).
inline std::string rat_to_string(const Rat& r) {
  std::string s = numerator(r).str();
  s += '/';
  s += denominator(r).str();
  return s;
}

inline Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s));
  Int num(s.substr(0, slash));
  Int den(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
  return Rat(num, den);
}

inline Rat rat_pow(const Rat& base, unsigned e) {
  Rat out(1);
  Rat b = base;
  while (e) {
    if (e & 1u) out *= b;
    b *= b;
    e >>= 1u;
  }
  return out;
}

} // namespace sixv
