#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dehn/integer.hpp"

namespace dehn {

class SlopeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An unoriented essential curve on a torus, written p/q with respect to a
/// (meridian, longitude) basis.
///
/// Stored normalized: gcd(|p|, q) = 1, q >= 0, the sign lives on p, and the
/// meridian 1/0 is the unique slope with q = 0. Two slopes are equal iff their
/// normalized pairs are equal.
class Slope {
 public:
  /// Reduces (p, q) to the normalized representative. Throws SlopeError on (0, 0).
  static Slope normalized(const Integer& p, const Integer& q);
  static Slope infinity() { return Slope(1, 0); }
  static Slope integer(const Integer& n) { return Slope(n, 1); }

  /// Parses "p/q", a bare integer "n", or "inf". Non-normalized input is
  /// accepted and normalized; the output of to_string() parses back exactly.
  static Slope parse(std::string_view text);

  const Integer& p() const { return p_; }
  const Integer& q() const { return q_; }
  bool is_infinite() const { return q_ == 0; }
  bool is_integral() const { return q_ == 1; }

  /// "p/q", or "inf" for the meridian.
  std::string to_string() const;

  friend bool operator==(const Slope&, const Slope&) = default;
  friend std::strong_ordering operator<=>(const Slope& a, const Slope& b);

 private:
  Slope(Integer p, Integer q) : p_(std::move(p)), q_(std::move(q)) {}
  Integer p_;
  Integer q_;
};

/// Signed algebraic intersection <a, b> = p_a q_b - q_a p_b of the chosen
/// representatives. Only its absolute value is basis-orientation independent.
Integer pairing(const Slope& a, const Slope& b);

/// Distance between slopes: |p_a q_b - q_a p_b|.
Integer distance(const Slope& a, const Slope& b);

/// Homological action of k Dehn twists along `axis` on `target`:
/// t + k <t, axis> axis. Preserves the distance to the axis.
Slope dehn_twist(const Slope& target, const Slope& axis, const Integer& k);

struct IntegerGapReport {
  Rational gap;      // min |p/q - n| over n in Z \ {-1, 0, 1}
  Rational m_value;  // |q| * gap
};

/// The integer-gap quantity of a finite slope. Throws SlopeError for 1/0.
IntegerGapReport integer_gap(const Slope& s);

}  // namespace dehn
