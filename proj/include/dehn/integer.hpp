#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace dehn {

// Every exact quantity in the library (slope coordinates, fiber invariants,
// homology orders) is an unbounded integer or rational.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer abs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

// Floor division and the matching non-negative remainder; b must be nonzero.
Integer floor_div(const Integer& a, const Integer& b);
Integer mod_floor(const Integer& a, const Integer& b);

// Extended Euclid: returns g = gcd(a, b) >= 0 and sets x, y with a*x + b*y = g.
Integer extended_gcd(const Integer& a, const Integer& b, Integer& x, Integer& y);

std::string to_string(const Integer& x);
std::string to_string(const Rational& x);

// Accepts an optional leading '-' followed by decimal digits.
std::optional<Integer> parse_integer(std::string_view text);

// Returns the value if it fits in a signed 64-bit integer.
std::optional<std::int64_t> to_int64(const Integer& x);

}  // namespace dehn
