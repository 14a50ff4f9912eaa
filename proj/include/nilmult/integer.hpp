#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace nilmult {

/// Arbitrary-precision integer used for every exponent and matrix entry.
using Integer = boost::multiprecision::cpp_int;

/// Floor division: q = floor(a / b), b != 0.
Integer floor_div(const Integer& a, const Integer& b);

/// Non-negative remainder in [0, |b|).
Integer floor_mod(const Integer& a, const Integer& b);

/// Extended gcd: returns g = gcd(a, b) >= 0 with s*a + t*b = g.
Integer ext_gcd(const Integer& a, const Integer& b, Integer& s, Integer& t);

Integer abs(const Integer& a);

std::string to_string(const Integer& a);

}  // namespace nilmult
