#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>

namespace treasure {

// Expression templates are disabled so `auto` always yields a value.
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  return Rational(num, den);
}

inline BigInt numerator_of(const Rational& r) {
  return boost::multiprecision::numerator(r);
}

inline BigInt denominator_of(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

/// "num/den", or just "num" for integers.
inline std::string to_string(const Rational& r) {
  return r.str();
}

inline double to_double(const Rational& r) {
  return r.convert_to<double>();
}

/// Parses "a/b" or "a" into an exact fraction. Decimal notation is rejected.
Rational parse_rational(const std::string& text);

}  // namespace treasure
