#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace combicache {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const BigInt& num, const BigInt& den)
{
  return Rational(num, den);
}

inline BigInt numerator_of(const Rational& x) { return boost::multiprecision::numerator(x); }
inline BigInt denominator_of(const Rational& x) { return boost::multiprecision::denominator(x); }

/// "p/q" form, or "p" when the denominator is one.
std::string to_fraction_string(const Rational& x);

/// Shortest round-trip decimal of the nearest double. Display only.
std::string to_decimal_string(const Rational& x);

double to_double(const Rational& x);

}  // namespace combicache
