#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace gw2 {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rat(long long num, long long den = 1) { return Rational(num, den); }

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

}  // namespace gw2
