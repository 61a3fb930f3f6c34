#include "dehn/jsj.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace dehn {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const std::string kOuterLabel = "K";

const char* const kTagOneCusp = "hyperbolic: exceptional fillings of a 1-cusped hyperbolic manifold lie within distance 8 of each other, and |q| is the distance to the meridian (|q| >= 9)";
const char* const kTagMultiCusp = "hyperbolic: filling a hyperbolic knot in an unknot or unlink exterior is hyperbolic once |q| >= 3";
const char* const kTagUncertified = "uncertified: no hyperbolicity theorem applies at this |q|";
const char* const kTagIrreducible = "JSJ tori of the exterior persist: |q| >= 9 (and |p| <= |q| for cable and torus knot exteriors)";

// torus_exterior runs a small search; cache it per thread.
const SeifertData& cached_torus_exterior(std::int64_t r, std::int64_t s) {
  thread_local std::map<std::pair<std::int64_t, std::int64_t>, SeifertData> cache;
  auto key = std::make_pair(r, s);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, torus_exterior(r, s)).first;
  return it->second;
}

std::size_t build(const KnotExpr& e, JsjDecomposition& d) {
  const std::size_t index = d.pieces.size();
  std::visit(Overloaded{
                 [&](const Unknot&) { d.pieces.emplace_back(UnknotExteriorPiece{unknot_exterior()}); },
                 [&](const TorusKnot& t) {
                   d.pieces.emplace_back(TorusExteriorPiece{t.r, t.s, cached_torus_exterior(t.r, t.s)});
                 },
                 [&](const Cable& c) {
                   d.pieces.emplace_back(CableSpacePiece{c.r, c.s, cable_space(c.r, c.s)});
                   const std::size_t inner = build(*c.companion, d);
                   d.edges.push_back(GluingEdge{index, "T", inner});
                 },
                 [&](const Sum& s) {
                   const auto n = static_cast<std::int64_t>(s.summands.size()) + 1;
                   d.pieces.emplace_back(ComposingSpacePiece{n, composing_space(n)});
                   for (std::size_t i = 0; i < s.summands.size(); ++i) {
                     const std::size_t inner = build(s.summands[i], d);
                     d.edges.push_back(GluingEdge{index, "T" + std::to_string(i + 1), inner});
                   }
                 },
                 [&](const HypAtom& h) {
                   HyperbolicPiece piece;
                   piece.name = h.name;
                   piece.cusp_labels.push_back(kOuterLabel);
                   for (std::int64_t i = 1; i < h.cusp_count; ++i) piece.cusp_labels.push_back("C" + std::to_string(i));
                   piece.cusp_shapes = h.cusps;
                   d.pieces.emplace_back(std::move(piece));
                 },
             },
             e.node());
  return index;
}

// ---------------------------------------------------------------------------
// Glued first-homology presentation.

struct Side {
  // Seifert boundary: images of the torus basis are implicit in section/fiber.
  const BoundaryTorus* boundary = nullptr;
  std::size_t section_gen = 0;
  std::size_t fiber_gen = 0;
  // Hyperbolic cusp: mu -> mu_row, lambda -> lambda_row.
  Presentation::Row mu_row;
  Presentation::Row lambda_row;
};

class GluedPresentation {
 public:
  void add_seifert(std::size_t piece, const SeifertData& data) {
    const auto gens = add_to_presentation(data, pres_);
    for (std::size_t i = 0; i < data.boundaries.size(); ++i) {
      Side side;
      side.boundary = &data.boundaries[i];
      side.section_gen = gens.sections[i];
      side.fiber_gen = gens.fiber;
      sides_[{piece, data.boundaries[i].label}] = std::move(side);
    }
  }

  // Cusp 0 is the distinguished one; link coordinates equal torus
  // coordinates there and are exchanged on every other cusp. Linking numbers
  // between components are taken to be zero, which leaves the homology of any
  // knot exterior in S^3 unchanged.
  void add_hyperbolic(std::size_t piece, const std::vector<std::string>& labels,
                      const std::optional<Slope>& filled_link_slope) {
    std::vector<std::size_t> meridians;
    for (std::size_t j = 0; j < labels.size(); ++j) meridians.push_back(pres_.add_generator());
    for (std::size_t j = 0; j < labels.size(); ++j) {
      if (j == 0 && filled_link_slope) {
        pres_.add_relation({{meridians[0], filled_link_slope->p()}});
        continue;
      }
      Side side;
      if (j == 0) {
        side.mu_row = {{meridians[j], 1}};
        side.lambda_row = {};
      } else {
        side.mu_row = {};
        side.lambda_row = {{meridians[j], 1}};
      }
      sides_[{piece, labels[j]}] = std::move(side);
    }
  }

  void add_piece(std::size_t index, const ClassifiedPiece& piece) {
    std::visit(Overloaded{
                   [&](const JsjPiece& p) {
                     if (const auto* sd = seifert_of(p)) {
                       add_seifert(index, *sd);
                     } else {
                       add_hyperbolic(index, std::get<HyperbolicPiece>(p).cusp_labels, std::nullopt);
                     }
                   },
                   [&](const FilledSeifert& f) { add_seifert(index, f.seifert); },
                   [&](const FilledHyperbolic& h) {
                     std::vector<std::string> labels{kOuterLabel};
                     for (std::size_t i = 1; i < h.cusp_count; ++i) labels.push_back("C" + std::to_string(i));
                     add_hyperbolic(index, labels, h.link_slope);
                   },
               },
               piece);
  }

  // Returns the torus generators (mu, lambda).
  std::pair<std::size_t, std::size_t> add_torus() {
    const std::size_t mu = pres_.add_generator();
    const std::size_t la = pres_.add_generator();
    return {mu, la};
  }

  void attach(std::size_t piece, const std::string& label, std::pair<std::size_t, std::size_t> torus) {
    const auto it = sides_.find({piece, label});
    if (it == sides_.end()) throw std::logic_error("glued presentation: missing boundary '" + label + "'");
    const Side& side = it->second;
    const auto [mu, la] = torus;
    if (side.boundary) {
      const Curve& c = side.boundary->section;
      const Curve& h = side.boundary->fiber;
      pres_.add_relation({{side.section_gen, 1}, {mu, -c.m}, {la, -c.l}});
      pres_.add_relation({{side.fiber_gen, 1}, {mu, -h.m}, {la, -h.l}});
    } else {
      Presentation::Row r1 = side.mu_row, r2 = side.lambda_row;
      for (auto& [g, v] : r1) v = -v;
      for (auto& [g, v] : r2) v = -v;
      r1.emplace_back(mu, 1);
      r2.emplace_back(la, 1);
      pres_.add_relation(std::move(r1));
      pres_.add_relation(std::move(r2));
    }
  }

  void relate(Presentation::Row row) { pres_.add_relation(std::move(row)); }
  Integer order() const { return group_order(pres_); }

 private:
  Presentation pres_;
  std::map<std::pair<std::size_t, std::string>, Side> sides_;
};

Integer glued_order(const std::vector<ClassifiedPiece>& pieces, const std::vector<GluingEdge>& edges,
                    const std::optional<Slope>& outer_filling) {
  GluedPresentation glued;
  for (std::size_t i = 0; i < pieces.size(); ++i) glued.add_piece(i, pieces[i]);
  for (const auto& e : edges) {
    const auto torus = glued.add_torus();
    glued.attach(e.outer, e.outer_label, torus);
    glued.attach(e.inner, kOuterLabel, torus);
  }
  if (outer_filling) {
    const auto torus = glued.add_torus();
    glued.attach(0, kOuterLabel, torus);
    glued.relate({{torus.first, outer_filling->p()}, {torus.second, outer_filling->q()}});
  }
  return glued.order();
}

}  // namespace

Slope HyperbolicPiece::to_link_slope(const std::string& label, const Slope& slope) const {
  if (label == kOuterLabel) return slope;
  return Slope::normalized(slope.q(), slope.p());
}

Slope HyperbolicPiece::from_link_slope(const std::string& label, const Slope& slope) const {
  // The exchange p/q <-> q/p is an involution.
  return to_link_slope(label, slope);
}

const SeifertData* seifert_of(const JsjPiece& piece) {
  return std::visit(Overloaded{
                        [](const HyperbolicPiece&) -> const SeifertData* { return nullptr; },
                        [](const auto& p) -> const SeifertData* { return &p.seifert; },
                    },
                    piece);
}

std::string piece_kind(const JsjPiece& piece) {
  return std::visit(Overloaded{
                        [](const CableSpacePiece&) { return std::string("cable-space"); },
                        [](const ComposingSpacePiece&) { return std::string("composing-space"); },
                        [](const TorusExteriorPiece&) { return std::string("torus-exterior"); },
                        [](const UnknotExteriorPiece&) { return std::string("unknot-exterior"); },
                        [](const HyperbolicPiece&) { return std::string("hyperbolic"); },
                    },
                    piece);
}

JsjDecomposition jsj(const KnotExpr& e) {
  JsjDecomposition d;
  build(e, d);
  return d;
}

RegimeRefusal::RegimeRefusal(std::string precondition, const std::string& message)
    : std::runtime_error(message), precondition_(std::move(precondition)) {}

Integer max_exceptional_order(const JsjDecomposition& d) {
  Integer best = 0;
  for (const auto& p : d.pieces) {
    if (const auto* sd = seifert_of(p)) {
      for (const auto& f : sd->exceptional) best = std::max(best, f.alpha);
    }
  }
  return best;
}

std::optional<Slope> outer_fiber_slope(const JsjDecomposition& d) {
  if (d.pieces.empty()) return std::nullopt;
  const auto* sd = seifert_of(d.pieces.front());
  if (!sd) return std::nullopt;
  return sd->boundary(kOuterLabel)->fiber_slope();
}

SurgeryClassification fill_outermost(const KnotExpr& e, const JsjDecomposition& d, const Slope& slope) {
  SurgeryClassification out;
  out.knot = e;
  out.slope = slope;
  out.jsj_tori = d.edges;
  out.pieces.reserve(d.pieces.size());
  for (const auto& p : d.pieces) out.pieces.emplace_back(p);
  out.irreducible_tag = "not certified: computed outside the classification regime";

  const JsjPiece& outer = d.pieces.front();
  if (const auto* hyp = std::get_if<HyperbolicPiece>(&outer)) {
    FilledHyperbolic filled;
    filled.name = hyp->name;
    filled.link_slope = hyp->to_link_slope(kOuterLabel, slope);
    filled.cusp_count = hyp->cusp_labels.size();
    const Integer aq = abs(slope.q());
    if (filled.cusp_count == 1) {
      filled.certified = aq >= 9;
      filled.certification = filled.certified ? kTagOneCusp : kTagUncertified;
    } else {
      filled.certified = aq >= 3;
      filled.certification = filled.certified ? kTagMultiCusp : kTagUncertified;
    }
    out.core = SurgeryCore{0, SurgeryCore::Kind::short_geodesic, 0, filled.certification};
    out.pieces[0] = std::move(filled);
    return out;
  }

  const SeifertData& data = *seifert_of(outer);
  const ExceptionalFiber core = fiber_coordinates(*data.boundary(kOuterLabel), slope);
  FillResult result = fill(data, kOuterLabel, slope);  // throws FiberSlopeFilling when core.alpha == 0
  FilledSeifert filled;
  filled.source_kind = piece_kind(outer);
  if (auto* st = std::get_if<SolidTorus>(&result)) {
    filled.seifert = st->seifert;
    filled.solid_torus = std::move(*st);
  } else {
    filled.seifert = std::move(std::get<SeifertData>(result));
  }
  out.core = SurgeryCore{0, core.alpha >= 2 ? SurgeryCore::Kind::exceptional_fiber : SurgeryCore::Kind::regular_fiber,
                         core.alpha, ""};
  out.pieces[0] = std::move(filled);
  return out;
}

SurgeryClassification classify_surgery(const KnotExpr& e, const Slope& slope) {
  return classify_surgery(e, jsj(e), slope);
}

SurgeryClassification classify_surgery(const KnotExpr& e, const JsjDecomposition& d, const Slope& slope) {
  const Integer ap = abs(slope.p());
  const Integer aq = abs(slope.q());
  if (aq < 9)
    throw RegimeRefusal("q-at-least-9", "slope " + slope.to_string() + " has |q| = " + aq.str() +
                                            " < 9; the surgered manifold is not classified outside |q| >= 9");
  const JsjPiece& outer = d.pieces.front();
  const bool needs_small_p =
      std::holds_alternative<CableSpacePiece>(outer) || std::holds_alternative<TorusExteriorPiece>(outer);
  if (needs_small_p && ap > aq)
    throw RegimeRefusal("p-at-most-q", "slope " + slope.to_string() + " has |p| > |q| and the outermost piece is a " +
                                           piece_kind(outer) + "; classification requires |p| <= |q|");
  SurgeryClassification out = fill_outermost(e, d, slope);
  out.in_regime = true;
  out.irreducible = true;
  out.irreducible_tag = kTagIrreducible;
  return out;
}

Integer h1_order(const SurgeryClassification& c) { return glued_order(c.pieces, c.jsj_tori, std::nullopt); }

Integer h1_order_by_filling(const JsjDecomposition& d, const Slope& slope) {
  std::vector<ClassifiedPiece> pieces(d.pieces.begin(), d.pieces.end());
  return glued_order(pieces, d.edges, slope);
}

CableReduction reduce_cable_surgery(const KnotExpr& cable, const Slope& slope) {
  const auto* c = cable.as<Cable>();
  if (!c) throw ReductionError("reduce_cable_surgery: expression is not a cable");
  Integer r = c->r, s = c->s;
  if (s < 0) {
    r = -r;
    s = -s;
  }
  const Integer aq = abs(slope.q());
  if (aq < 1) throw ReductionError("reduce_cable_surgery: the meridian 1/0 is not a surgery slope");
  const Slope fiber = Slope::integer(r * s);
  const Integer offset = slope.p() - slope.q() * r * s;  // +-1 exactly when distance is 1
  if (abs(offset) != 1)
    throw ReductionError("reduce_cable_surgery: distance(" + slope.to_string() + ", " + fiber.to_string() +
                         ") = " + abs(offset).str() + ", expected 1");

  // p/q = (1 + k rs)/k with k = offset * q. Untwisting that slope to the
  // meridian applies k twists along the fiber, whose slope on the companion
  // torus is r/s, to the companion-side meridian.
  const Integer k = offset * slope.q();
  const Slope result = dehn_twist(Slope::infinity(), Slope::normalized(r, s), k);

  if (abs(result.p()) != abs(slope.p()))
    throw ReductionError("reduce_cable_surgery: |p'| = " + abs(result.p()).str() + " differs from |p| = " +
                         abs(slope.p()).str() + " (first homology would change)");
  const Integer aq2 = abs(result.q());
  if (!(aq2 > aq && aq2 % aq == 0))
    throw ReductionError("reduce_cable_surgery: |q| = " + aq.str() + " does not properly divide |q'| = " + aq2.str());
  return CableReduction{*c->companion, result, k};
}

ReductionResult reduce_to_companion(const KnotExpr& e, const Slope& slope) {
  if (slope.is_infinite())
    throw RegimeRefusal("finite-slope", "cable reduction needs a surgery slope, got the meridian 1/0");
  ReductionResult out;
  out.chain.push_back(ReductionStep{e, slope});
  KnotExpr cur = e;
  Slope s = slope;
  while (const auto* c = cur.as<Cable>()) {
    const Slope fiber = Slope::integer(Integer(c->r) * Integer(c->s));
    const Integer dist = distance(s, fiber);
    if (dist == 1) {
      CableReduction red = reduce_cable_surgery(cur, s);
      cur = red.companion;
      s = red.slope;
      out.chain.push_back(ReductionStep{cur, s});
      continue;
    }
    if (dist == 0) {
      out.reducible = true;
      out.stop_reason = "reducible: " + s.to_string() + " is the fiber slope of the cable space";
      return out;
    }
    out.terminal = fill_outermost(cur, jsj(cur), s);
    out.essential_torus = true;
    out.stop_reason = "essential torus: the cable space fills to a Seifert piece with two exceptional fibers (orders " +
                      std::to_string(std::abs(c->s)) + " and " + dist.str() +
                      ") whose boundary torus is incompressible";
    return out;
  }
  out.stop_reason = out.chain.size() == 1 ? "not a cable" : "companion is not a cable";
  return out;
}

SurgeredManifold surgered_manifold(const KnotExpr& e, const Slope& slope) {
  SurgeredManifold out;
  KnotExpr cur = e;
  Slope s = slope;
  out.chain.push_back(ReductionStep{cur, s});
  while (true) {
    const JsjDecomposition d = jsj(cur);
    SurgeryClassification c;
    try {
      c = fill_outermost(cur, d, s);
    } catch (const FiberSlopeFilling&) {
      out.reducible = true;
      out.h1 = h1_order_by_filling(d, s);
      return out;
    }
    const auto* fs = std::get_if<FilledSeifert>(&c.pieces.front());
    if (fs && fs->solid_torus && cur.is<Cable>()) {
      s = fs->solid_torus->meridian;
      cur = *cur.as<Cable>()->companion;
      out.chain.push_back(ReductionStep{cur, s});
      continue;
    }
    out.h1 = h1_order(c);
    if (fs && fs->seifert.closed() && c.pieces.size() == 1) out.closed_seifert = normalize_closed(fs->seifert);
    out.classification = std::move(c);
    return out;
  }
}

// ---------------------------------------------------------------------------
// JSON

namespace {

Json piece_json(const JsjPiece& p) {
  Json j{{"kind", piece_kind(p)}};
  std::visit(Overloaded{
                 [&](const CableSpacePiece& c) {
                   j["r"] = c.r;
                   j["s"] = c.s;
                   j["seifert"] = to_json(c.seifert);
                 },
                 [&](const ComposingSpacePiece& c) {
                   j["boundary_count"] = c.boundary_count;
                   j["seifert"] = to_json(c.seifert);
                 },
                 [&](const TorusExteriorPiece& t) {
                   j["r"] = t.r;
                   j["s"] = t.s;
                   j["seifert"] = to_json(t.seifert);
                 },
                 [&](const UnknotExteriorPiece& u) { j["seifert"] = to_json(u.seifert); },
                 [&](const HyperbolicPiece& h) {
                   j["name"] = h.name;
                   j["cusps"] = h.cusp_labels;
                   j["slope_convention"] = "p/q on K; p/q -> q/p on every other cusp";
                 },
             },
             p);
  return j;
}

Json orders_json(const SeifertData& sd) {
  std::vector<Integer> orders;
  for (const auto& f : sd.exceptional) orders.push_back(f.alpha);
  std::sort(orders.begin(), orders.end());
  Json j = Json::array();
  for (const auto& o : orders) j.push_back(to_json(o));
  return j;
}

Json edges_json(const std::vector<GluingEdge>& edges) {
  Json j = Json::array();
  for (const auto& e : edges)
    j.push_back(Json{{"outer", e.outer}, {"outer_label", e.outer_label}, {"inner", e.inner}, {"inner_label", kOuterLabel}});
  return j;
}

std::string core_kind(SurgeryCore::Kind k) {
  switch (k) {
    case SurgeryCore::Kind::exceptional_fiber: return "exceptional-fiber";
    case SurgeryCore::Kind::regular_fiber: return "regular-fiber";
    case SurgeryCore::Kind::short_geodesic: return "short-geodesic";
  }
  return "unknown";
}

}  // namespace

Json to_json(const JsjDecomposition& d) {
  Json pieces = Json::array();
  for (const auto& p : d.pieces) pieces.push_back(piece_json(p));
  return Json{{"pieces", pieces}, {"jsj_tori", edges_json(d.edges)}};
}

Json to_json(const SurgeryClassification& c) {
  Json j;
  j["schema"] = "dehn.classification/1";
  j["knot"] = print(c.knot);
  j["slope"] = c.slope.to_string();
  j["in_regime"] = c.in_regime;
  Json pieces = Json::array();
  for (const auto& p : c.pieces) {
    std::visit(Overloaded{
                   [&](const JsjPiece& jp) { pieces.push_back(piece_json(jp)); },
                   [&](const FilledSeifert& f) {
                     Json fj{{"kind", "filled-seifert"}, {"source", f.source_kind}};
                     fj["exceptional_orders"] = orders_json(f.seifert);
                     fj["seifert"] = to_json(f.seifert);
                     if (f.seifert.closed()) fj["normalized"] = to_json(normalize_closed(f.seifert));
                     if (f.solid_torus)
                       fj["solid_torus"] = Json{{"boundary", f.solid_torus->label},
                                                {"meridian", f.solid_torus->meridian.to_string()},
                                                {"fiber", f.solid_torus->fiber.to_string()}};
                     pieces.push_back(fj);
                   },
                   [&](const FilledHyperbolic& h) {
                     pieces.push_back(Json{{"kind", "filled-hyperbolic"},
                                           {"name", h.name},
                                           {"link_slope", h.link_slope.to_string()},
                                           {"cusps", h.cusp_count},
                                           {"hyperbolic", h.certified},
                                           {"certification", h.certification}});
                   },
               },
               p);
  }
  j["pieces"] = pieces;
  j["jsj_tori"] = edges_json(c.jsj_tori);
  Json core{{"piece", c.core.piece}, {"kind", core_kind(c.core.kind)}};
  if (c.core.kind == SurgeryCore::Kind::short_geodesic) {
    core["certification"] = c.core.certification;
  } else {
    core["order"] = to_json(c.core.order);
  }
  j["surgery_core"] = core;
  j["irreducible"] = c.irreducible;
  j["irreducible_tag"] = c.irreducible_tag;
  j["h1_order"] = to_json(h1_order(c));
  return j;
}

Json to_json(const ReductionResult& r) {
  Json j;
  j["schema"] = "dehn.reduction/1";
  Json chain = Json::array();
  for (const auto& step : r.chain) chain.push_back(Json{{"knot", print(step.knot)}, {"slope", step.slope.to_string()}});
  j["chain"] = chain;
  j["stop_reason"] = r.stop_reason;
  j["essential_torus"] = r.essential_torus;
  j["reducible"] = r.reducible;
  if (r.terminal) {
    Json t = to_json(*r.terminal);
    t.erase("schema");
    j["terminal"] = t;
  }
  return j;
}

}  // namespace dehn
