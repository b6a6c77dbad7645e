#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace dcx {

// All scalar arithmetic in the engine is exact. cpp_rational keeps the
// canonical form (gcd-reduced, positive denominator, 0 = 0/1) after every
// operation, which bounds coefficient swell during elimination.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string num_str(const Rational& q) { return numerator(q).str(); }
inline std::string den_str(const Rational& q) { return denominator(q).str(); }

// "3", "-1/2", ...
inline std::string rational_str(const Rational& q) { return q.str(); }

inline Rational rational_from_strings(const std::string& num, const std::string& den) {
  BigInt n, d;
  try {
    n = BigInt(num);
    d = BigInt(den);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad integer literal: \"" + num + "\"/\"" + den + "\"");
  }
  if (d == 0) throw std::invalid_argument("zero denominator");
  return Rational(n) / Rational(d);
}

}  // namespace dcx
