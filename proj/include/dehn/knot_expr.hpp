#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace dehn {

using Json = nlohmann::ordered_json;

/// Translation lattice of a horoball-neighbourhood boundary torus: the
/// Euclidean vectors of the meridian and longitude.
struct CuspShape {
  std::array<double, 2> meridian{};
  std::array<double, 2> longitude{};

  double lattice_determinant() const {
    return meridian[0] * longitude[1] - meridian[1] * longitude[0];
  }
  friend bool operator==(const CuspShape&, const CuspShape&) = default;
};

class KnotExpr;

struct Unknot {
  friend bool operator==(const Unknot&, const Unknot&) = default;
};

struct TorusKnot {
  std::int64_t r = 0;
  std::int64_t s = 0;
  friend bool operator==(const TorusKnot&, const TorusKnot&) = default;
};

/// The (r, s)-cable: the knot of slope r/s on the boundary of a neighbourhood
/// of the companion; |s| is the winding number.
struct Cable {
  std::int64_t r = 0;
  std::int64_t s = 0;
  std::shared_ptr<const KnotExpr> companion;
  friend bool operator==(const Cable& a, const Cable& b);
};

struct Sum {
  std::vector<KnotExpr> summands;
  friend bool operator==(const Sum& a, const Sum& b);
};

/// Opaque hyperbolic piece. One cusp: a hyperbolic knot in S^3. n >= 2 cusps:
/// a hyperbolic link exterior whose non-distinguished components form an
/// unlink; cusp 0 is the distinguished (knot) cusp.
struct HypAtom {
  std::string name;
  std::int64_t cusp_count = 1;
  std::vector<CuspShape> cusps;  // empty, or exactly one shape per cusp
  friend bool operator==(const HypAtom&, const HypAtom&) = default;
};

/// Immutable splice-expression tree for a knot.
class KnotExpr {
 public:
  using Node = std::variant<Unknot, TorusKnot, Cable, Sum, HypAtom>;

  KnotExpr() : node_(Unknot{}) {}

  static KnotExpr unknot() { return KnotExpr(Unknot{}); }
  static KnotExpr torus(std::int64_t r, std::int64_t s) { return KnotExpr(TorusKnot{r, s}); }
  static KnotExpr cable(std::int64_t r, std::int64_t s, KnotExpr companion);
  static KnotExpr sum(std::vector<KnotExpr> summands) { return KnotExpr(Sum{std::move(summands)}); }
  static KnotExpr hyp(std::string name, std::int64_t cusp_count, std::vector<CuspShape> cusps = {});

  const Node& node() const { return node_; }
  template <class T>
  const T* as() const { return std::get_if<T>(&node_); }
  template <class T>
  bool is() const { return std::holds_alternative<T>(node_); }

  friend bool operator==(const KnotExpr& a, const KnotExpr& b) { return a.node_ == b.node_; }

 private:
  explicit KnotExpr(Node node) : node_(std::move(node)) {}
  Node node_;
};

/// Syntax error at a byte offset of the input text.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& message);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// A well-formed tree that violates a structural invariant. `invariant` is a
/// stable identifier such as "torus.coprime" or "sum.flattened".
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string invariant, const std::string& message);
  const std::string& invariant() const { return invariant_; }

 private:
  std::string invariant_;
};

/// Throws ValidationError naming the first violated invariant.
void validate(const KnotExpr& e);

/// Rewrites a tree into canonical form without changing the knot: torus
/// parameters ordered with s > 0 and |r| > s, cable winding number positive,
/// cables of the unknot turned into torus knots, nested sums flattened and
/// summands sorted by printed text.
KnotExpr canonicalize(const KnotExpr& e);

/// Parses, canonicalizes and validates. Throws ParseError or ValidationError.
KnotExpr parse_knot(std::string_view text);

/// Canonical text. parse_knot(print(e)) == e for every canonical valid e.
std::string print(const KnotExpr& e);

enum class ExprKind {
  unknot,
  torus_knot,
  iterated_cable,
  composite,
  hyperbolic,
  hyperbolic_companion_cable,
};

struct ExprClass {
  ExprKind kind = ExprKind::unknot;
  int cable_depth = 0;                         // cables only
  std::optional<ExprKind> base;                // kind of the innermost non-cable
  friend bool operator==(const ExprClass&, const ExprClass&) = default;
};

ExprClass classify_expr(const KnotExpr& e);
std::string to_string(ExprKind kind);
std::string describe(const ExprClass& c);

/// Number of nested cables wrapped around the outermost non-cable node.
int cable_depth(const KnotExpr& e);

Json to_json(const KnotExpr& e);
KnotExpr knot_from_json(const Json& j);

}  // namespace dehn
