#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dehn/knot_expr.hpp"
#include "dehn/slope.hpp"

namespace dehn {

class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Absolute tolerance for comparisons against 2*pi and 6. A value within the
// tolerance of the threshold does not count as exceeding it.
inline constexpr double kLengthTolerance = 1e-9;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Euclidean length of p * meridian + q * longitude on the cusp lattice.
/// Throws GeometryError when the two lattice vectors are (nearly) parallel.
double slope_length(const CuspShape& cusp, const Slope& s);

/// (sqrt(3)/6) * delta.
double length_lower_bound(const Integer& delta);

bool exceeds_2pi(double length);
bool exceeds_6(double length);

struct VolumeBounds {
  double factor = 0;  // (1 - (2 pi / l_min)^2)^(3/2)
  double low = 0;
  double high = 0;    // exclusive
};

/// Volume sandwich for filling along slopes all of length at least l_min.
/// Throws GeometryError unless vol_x > 0 and l_min > 2 pi.
VolumeBounds volume_bounds(double vol_x, double l_min);

struct SixTheoremReport {
  bool all_exceed_6 = true;
  bool all_exceed_2pi = true;
  std::size_t count = 0;
};

/// Every length strictly greater than 6 (and, separately, than 2 pi).
SixTheoremReport six_theorem_check(const std::vector<double>& lengths);

struct LengthBoundReport {
  Slope slope = Slope::infinity();
  std::optional<double> length;
  double lower_bound = 0;
  bool exceeds_2pi = false;
  bool exceeds_6 = false;
};

/// Flags refer to the measured length when a cusp is given, otherwise to the
/// lower bound.
LengthBoundReport length_report(const Slope& s, const std::optional<CuspShape>& cusp);

/// Cusp files. Plain text: one cusp per line, four reals
/// "meridian_x meridian_y longitude_x longitude_y"; blank lines and text after
/// '#' are ignored. JSON: an array of {"meridian": [x, y], "longitude": [x, y]}
/// objects, or an object whose "cusps" member is such an array.
std::vector<CuspShape> parse_cusp_text(const std::string& text);
std::vector<CuspShape> parse_cusp_json(const std::string& text);
/// Dispatches on the first non-blank character ('[' or '{' means JSON).
std::vector<CuspShape> parse_cusp_file(const std::string& text);

Json to_json(const LengthBoundReport& r);
Json to_json(const VolumeBounds& v);

}  // namespace dehn
