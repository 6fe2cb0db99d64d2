#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace heightlat {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const BigInt& num, const BigInt& den) { return Rational(num, den); }

}  // namespace heightlat
