#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "dehn/homology.hpp"
#include "dehn/integer.hpp"
#include "dehn/knot_expr.hpp"
#include "dehn/slope.hpp"

namespace dehn {

/// An oriented primitive class m*meridian + l*longitude on a boundary torus,
/// in that torus's own coordinates. Unlike Slope it keeps its orientation,
/// which homology computations need.
struct Curve {
  Integer m = 0;
  Integer l = 0;

  Slope slope() const { return Slope::normalized(m, l); }
  friend bool operator==(const Curve&, const Curve&) = default;
};

inline Integer det(const Curve& a, const Curve& b) { return a.m * b.l - a.l * b.m; }

struct ExceptionalFiber {
  Integer alpha;  // order, >= 2
  Integer beta;
  friend bool operator==(const ExceptionalFiber&, const ExceptionalFiber&) = default;
  friend auto operator<=>(const ExceptionalFiber& a, const ExceptionalFiber& b) {
    if (a.alpha != b.alpha) return a.alpha < b.alpha ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.beta != b.beta) return a.beta < b.beta ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
};

/// A boundary torus of a Seifert piece. `fiber` is the regular fiber h and
/// `section` the boundary c of a fixed global section of the fibration over
/// the planar base, both in the torus's (meridian, longitude) coordinates;
/// det(section, fiber) = +-1.
struct BoundaryTorus {
  std::string label;
  Curve fiber;
  Curve section;

  Slope fiber_slope() const { return fiber.slope(); }
  friend bool operator==(const BoundaryTorus&, const BoundaryTorus&) = default;
};

/// Seifert fibered space over a planar base (genus 0).
///
/// Homology convention. With section boundaries c_i, exceptional-fiber
/// section curves e_j and regular fiber h, the first homology is
///
///   < c_i, e_j, h | sum c_i + sum e_j = b h,  alpha_j e_j + beta_j h = 0 >
///
/// where b is `integer_part`. Pieces with boundary always carry b = 0 (any
/// integer part is absorbed into the first boundary's section). The rational
/// Euler number of a closed piece is -(b + sum beta_j / alpha_j).
struct SeifertData {
  std::vector<BoundaryTorus> boundaries;
  std::vector<ExceptionalFiber> exceptional;
  Integer integer_part = 0;

  bool closed() const { return boundaries.empty(); }
  const BoundaryTorus* boundary(const std::string& label) const;
  friend bool operator==(const SeifertData&, const SeifertData&) = default;
};

class SeifertError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a filling slope equals the fiber slope: the fibration does not
/// extend over the attached solid torus.
class FiberSlopeFilling : public SeifertError {
 public:
  using SeifertError::SeifertError;
};

/// Result of filling a piece down to a single boundary and at most one
/// exceptional fiber: a fibered solid torus.
struct SolidTorus {
  std::string label;        // the remaining boundary
  Slope meridian;           // slope bounding a disc, in that boundary's coordinates
  Slope fiber;              // regular fiber slope on that boundary
  Integer core_order = 1;   // order of the core fiber (1 = regular)
  SeifertData seifert;      // the same manifold as Seifert data
};

using FillResult = std::variant<SeifertData, SolidTorus>;

/// Exterior of the (r, s) torus knot. Boundary "K" in the knot's
/// (meridian, longitude) coordinates; fiber slope rs/1; exceptional fibers of
/// orders |r| and |s|. The beta invariants are chosen by bounded search so
/// that meridian filling has trivial H_1 and longitude filling infinite H_1.
SeifertData torus_exterior(std::int64_t r, std::int64_t s);

/// Cable space of the (r, s)-cable (|s| >= 2): annulus base, one exceptional
/// fiber of order |s|. Boundary "K" (the cable's own torus) has fiber slope
/// rs/1; boundary "T" (companion side, companion coordinates) has fiber slope r/s.
SeifertData cable_space(std::int64_t r, std::int64_t s);

/// Composing space P x S^1 for a sum of n-1 knots (n >= 3 boundaries): "K" has
/// fiber slope 1/0, and "T1".."T{n-1}" carry the summands' meridians as fibers.
SeifertData composing_space(std::int64_t n_boundaries);

/// Solid torus exterior of the unknot, fibered by meridian-parallel circles.
SeifertData unknot_exterior();

/// Dehn fills boundary `label` along `filling`. With d = distance(filling,
/// fiber slope): d = 0 throws FiberSlopeFilling; d = 1 extends with a regular
/// core; d >= 2 appends one exceptional fiber of order d. A result with one
/// boundary and at most one exceptional fiber is returned as SolidTorus.
FillResult fill(const SeifertData& piece, const std::string& label, const Slope& filling);

/// Writes `filling` as alpha * section + beta * fiber on the given boundary,
/// with alpha >= 0.
ExceptionalFiber fiber_coordinates(const BoundaryTorus& boundary, const Slope& filling);

/// Canonical closed form: betas reduced into [0, alpha), carries moved into
/// the integer part, order-1 fibers absorbed, list sorted. Preserves the
/// Euler number. Throws SeifertError for pieces with boundary.
SeifertData normalize_closed(const SeifertData& piece);

/// Orientation reversal: negates every beta and the integer part (and
/// mirrors the boundary coordinates). Never applied implicitly.
SeifertData reverse_orientation(const SeifertData& piece);

/// Rational Euler number -(b + sum beta/alpha) of a closed piece.
Rational euler_number(const SeifertData& piece);

/// |H_1| of a closed piece over S^2, or 0 if infinite.
Integer h1_order(const SeifertData& piece);

/// Generators allocated for one Seifert piece inside a larger presentation.
struct PieceGenerators {
  std::size_t fiber;
  std::vector<std::size_t> sections;  // one per boundary, same order
};

/// Adds the piece's generators and relations to `pres`.
PieceGenerators add_to_presentation(const SeifertData& piece, Presentation& pres);

Json to_json(const SeifertData& piece);
Json to_json(const Integer& x);
Json to_json(const Curve& c);

}  // namespace dehn
