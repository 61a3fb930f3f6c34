#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "dehn/knot_expr.hpp"
#include "dehn/seifert.hpp"
#include "dehn/slope.hpp"

namespace dehn {

struct CableSpacePiece {
  std::int64_t r = 0;
  std::int64_t s = 0;
  SeifertData seifert;
};

struct ComposingSpacePiece {
  std::int64_t boundary_count = 0;
  SeifertData seifert;
};

struct TorusExteriorPiece {
  std::int64_t r = 0;
  std::int64_t s = 0;
  SeifertData seifert;
};

struct UnknotExteriorPiece {
  SeifertData seifert;
};

/// Hyperbolic JSJ piece, modelled as the exterior of a link whose cusp "K" is
/// the distinguished component and whose other cusps "C1", "C2", ... form an
/// unlink. Slopes on "K" are passed through unchanged; on every other cusp
/// p/q is exchanged with q/p (the splice convention).
struct HyperbolicPiece {
  std::string name;
  std::vector<std::string> cusp_labels;
  std::vector<CuspShape> cusp_shapes;

  Slope to_link_slope(const std::string& label, const Slope& slope) const;
  Slope from_link_slope(const std::string& label, const Slope& slope) const;
};

using JsjPiece =
    std::variant<CableSpacePiece, ComposingSpacePiece, TorusExteriorPiece, UnknotExteriorPiece, HyperbolicPiece>;

/// Returns the Seifert data of a Seifert piece, nullptr for a hyperbolic one.
const SeifertData* seifert_of(const JsjPiece& piece);
std::string piece_kind(const JsjPiece& piece);

/// A JSJ torus. The outer piece meets it at boundary `outer_label`; the inner
/// piece at its own "K" boundary. Slopes on the torus are written in the inner
/// side's (meridian, longitude) coordinates, i.e. those of the companion or
/// summand knot exterior.
struct GluingEdge {
  std::size_t outer = 0;
  std::string outer_label;
  std::size_t inner = 0;
  friend bool operator==(const GluingEdge&, const GluingEdge&) = default;
};

/// Piece 0 contains the knot's own boundary "K". Pieces are listed in
/// depth-first order of the expression tree.
struct JsjDecomposition {
  std::vector<JsjPiece> pieces;
  std::vector<GluingEdge> edges;
};

JsjDecomposition jsj(const KnotExpr& e);

struct FilledSeifert {
  std::string source_kind;               // kind of the piece before filling
  SeifertData seifert;
  std::optional<SolidTorus> solid_torus;  // set when the filling produced one
};

struct FilledHyperbolic {
  std::string name;
  Slope link_slope = Slope::infinity();
  std::size_t cusp_count = 1;
  bool certified = false;
  std::string certification;
};

using ClassifiedPiece = std::variant<JsjPiece, FilledSeifert, FilledHyperbolic>;

struct SurgeryCore {
  enum class Kind { exceptional_fiber, regular_fiber, short_geodesic };
  std::size_t piece = 0;
  Kind kind = Kind::regular_fiber;
  Integer order = 1;          // fiber order; 0 for a geodesic
  std::string certification;  // geodesic cores only
};

struct SurgeryClassification {
  KnotExpr knot;
  Slope slope = Slope::infinity();
  std::vector<ClassifiedPiece> pieces;
  std::vector<GluingEdge> jsj_tori;
  SurgeryCore core;
  bool in_regime = false;
  bool irreducible = false;
  std::string irreducible_tag;
};

/// Structured refusal: the slope lies outside the regime where the
/// classification theorem applies. `precondition` is a stable identifier.
class RegimeRefusal : public std::runtime_error {
 public:
  RegimeRefusal(std::string precondition, const std::string& message);
  const std::string& precondition() const { return precondition_; }

 private:
  std::string precondition_;
};

/// Surgered-manifold classification in the certified regime: |q| >= 9, and
/// additionally |p| <= |q| when the outermost piece is a cable space or torus
/// knot exterior. The JSJ tori of the exterior survive unchanged and the
/// outermost piece is filled. Throws RegimeRefusal outside the regime.
SurgeryClassification classify_surgery(const KnotExpr& e, const Slope& slope);
SurgeryClassification classify_surgery(const KnotExpr& e, const JsjDecomposition& d, const Slope& slope);

/// Fills the outermost piece without any regime check. The result is marked
/// in_regime = false and carries no irreducibility claim. Throws
/// FiberSlopeFilling if the slope is the outermost fiber slope.
SurgeryClassification fill_outermost(const KnotExpr& e, const JsjDecomposition& d, const Slope& slope);

/// |H_1| of a classified manifold from the glued presentation of its pieces
/// (0 if infinite, e.g. when unfilled cusps remain).
Integer h1_order(const SurgeryClassification& c);

/// |H_1| of the exterior with the relation p*mu + q*lambda = 0 imposed on the
/// knot's boundary. Independent of any Seifert filling; works for every slope.
Integer h1_order_by_filling(const JsjDecomposition& d, const Slope& slope);

/// Largest exceptional-fiber order over the Seifert pieces (0 if none).
Integer max_exceptional_order(const JsjDecomposition& d);

/// Fiber slope on "K" of the outermost piece, when it is Seifert fibred.
std::optional<Slope> outer_fiber_slope(const JsjDecomposition& d);

class ReductionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CableReduction {
  KnotExpr companion;
  Slope slope = Slope::infinity();
  Integer twists = 0;  // k with p/q = (1 + k rs)/k up to sign
};

/// Replaces surgery on the cable by surgery on its companion when the cable
/// space fills to a solid torus: the meridian is twisted k times along the
/// fiber slope r/s on the companion torus. Requires a finite slope with
/// distance(p/q, rs/1) = 1. The result is checked to keep |p| and to have
/// |q| properly dividing |q'|; a violation throws ReductionError.
CableReduction reduce_cable_surgery(const KnotExpr& cable, const Slope& slope);

struct ReductionStep {
  KnotExpr knot;
  Slope slope = Slope::infinity();
};

struct ReductionResult {
  std::vector<ReductionStep> chain;  // starts with the input
  std::optional<SurgeryClassification> terminal;
  bool essential_torus = false;
  bool reducible = false;
  std::string stop_reason;
};

/// Iterates reduce_cable_surgery while the outermost piece is a cable space at
/// distance 1 from the fiber slope. Stops with a classification carrying an
/// essential torus when the distance is >= 2, or when the knot is no longer a
/// cable, or as reducible when the slope is the cable space's fiber slope.
/// Refuses the meridian 1/0 (RegimeRefusal); |q| = 1 is accepted.
ReductionResult reduce_to_companion(const KnotExpr& e, const Slope& slope);

/// Whole surgered manifold by Seifert filling alone: cable spaces that fill
/// to solid tori are absorbed into the companion (using the solid torus
/// meridian computed by fill) until a piece fills non-trivially.
struct SurgeredManifold {
  std::vector<ReductionStep> chain;
  std::optional<SurgeryClassification> classification;  // empty if reducible
  bool reducible = false;                                // fiber-slope filling
  Integer h1 = 0;
  /// Normalized closed Seifert data when the result is a single closed piece.
  std::optional<SeifertData> closed_seifert;
};

SurgeredManifold surgered_manifold(const KnotExpr& e, const Slope& slope);

Json to_json(const JsjDecomposition& d);
Json to_json(const SurgeryClassification& c);
Json to_json(const ReductionResult& r);

}  // namespace dehn
