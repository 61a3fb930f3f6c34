#include "dehn/seifert.hpp"

#include <algorithm>

namespace dehn {

const BoundaryTorus* SeifertData::boundary(const std::string& label) const {
  for (const auto& b : boundaries) {
    if (b.label == label) return &b;
  }
  return nullptr;
}

namespace {

Curve minus(const Curve& a, const Integer& k, const Curve& b) { return Curve{a.m - k * b.m, a.l - k * b.l}; }

// Shifts exceptional betas into [0, alpha) by re-choosing the section on the
// first boundary; the presented manifold is unchanged.
void normalize_with_boundary(SeifertData& piece) {
  if (piece.boundaries.empty()) return;
  auto& first = piece.boundaries.front();
  for (auto& f : piece.exceptional) {
    const Integer k = floor_div(f.beta, f.alpha);
    if (k == 0) continue;
    f.beta -= k * f.alpha;
    first.section = minus(first.section, k, first.fiber);
  }
}

}  // namespace

SeifertData torus_exterior(std::int64_t r, std::int64_t s) {
  const Integer rr = r, ss = s;
  const Integer ar = abs(rr), as = abs(ss);
  if (ar < 2 || as < 2 || gcd(ar, as) != 1) throw SeifertError("torus_exterior: invalid torus parameters");
  const Curve fiber{rr * ss, 1};
  const Curve meridian{1, 0};
  const BoundaryTorus probe{"K", fiber, meridian};

  const ExceptionalFiber meridian_fill = fiber_coordinates(probe, Slope::infinity());
  const ExceptionalFiber longitude_fill = fiber_coordinates(probe, Slope::integer(0));

  // Closed data obtained by filling the boundary, with section = meridian and
  // integer part b: the filled boundary acts as one more fiber.
  auto filled = [&](const Integer& b1, const Integer& b2, const Integer& b, const ExceptionalFiber& extra) {
    SeifertData closed;
    closed.exceptional = {{ar, b1}, {as, b2}, extra};
    closed.integer_part = b;
    return closed;
  };

  for (Integer b = -2; b <= 2; ++b) {
    for (Integer b1 = 0; b1 < ar; ++b1) {
      for (Integer b2 = 0; b2 < as; ++b2) {
        if (h1_order(filled(b1, b2, b, meridian_fill)) != 1) continue;
        if (h1_order(filled(b1, b2, b, longitude_fill)) != 0) continue;
        SeifertData piece;
        // sum e_j + c = b h  <=>  sum e_j + (c - b h) = 0
        piece.boundaries.push_back(BoundaryTorus{"K", fiber, minus(meridian, b, fiber)});
        piece.exceptional = {{ar, b1}, {as, b2}};
        return piece;
      }
    }
  }
  throw SeifertError("torus_exterior: no Seifert invariants satisfy the homology constraints");
}

SeifertData cable_space(std::int64_t r, std::int64_t s) {
  Integer rr = r, ss = s;
  if (ss < 0) {
    rr = -rr;
    ss = -ss;
  }
  if (ss < 2 || gcd(abs(rr), ss) != 1) throw SeifertError("cable_space: need gcd(r,s) = 1 and |s| >= 2");
  // Section on T is x*mu' + y*lambda' with y*r - x*s = 1, 0 < y < s.
  Integer x, y;
  extended_gcd(rr, ss, y, x);  // rr*y + ss*x = 1
  x = -x;
  const Integer k = floor_div(y, ss);
  y -= k * ss;
  x -= k * rr;
  SeifertData piece;
  piece.boundaries.push_back(BoundaryTorus{"K", Curve{rr * ss, 1}, Curve{1, 0}});
  piece.boundaries.push_back(BoundaryTorus{"T", Curve{rr, ss}, Curve{x, y}});
  piece.exceptional = {{ss, y}};
  return piece;
}

SeifertData composing_space(std::int64_t n_boundaries) {
  if (n_boundaries < 3) throw SeifertError("composing_space: need at least three boundary components");
  SeifertData piece;
  piece.boundaries.push_back(BoundaryTorus{"K", Curve{1, 0}, Curve{0, -1}});
  for (std::int64_t i = 1; i < n_boundaries; ++i)
    piece.boundaries.push_back(BoundaryTorus{"T" + std::to_string(i), Curve{1, 0}, Curve{0, 1}});
  return piece;
}

SeifertData unknot_exterior() {
  SeifertData piece;
  piece.boundaries.push_back(BoundaryTorus{"K", Curve{1, 0}, Curve{0, -1}});
  return piece;
}

ExceptionalFiber fiber_coordinates(const BoundaryTorus& boundary, const Slope& filling) {
  const Curve sigma{filling.p(), filling.q()};
  const Integer d = det(boundary.section, boundary.fiber);
  Integer alpha = det(sigma, boundary.fiber) / d;
  Integer beta = det(boundary.section, sigma) / d;
  if (alpha < 0) {
    alpha = -alpha;
    beta = -beta;
  }
  return ExceptionalFiber{alpha, beta};
}

FillResult fill(const SeifertData& piece, const std::string& label, const Slope& filling) {
  const auto it = std::find_if(piece.boundaries.begin(), piece.boundaries.end(),
                               [&](const BoundaryTorus& b) { return b.label == label; });
  if (it == piece.boundaries.end()) throw SeifertError("fill: no boundary labelled '" + label + "'");
  const ExceptionalFiber added = fiber_coordinates(*it, filling);
  if (added.alpha == 0)
    throw FiberSlopeFilling("fill: slope " + filling.to_string() + " is the fiber slope on '" + label +
                            "'; the fibration does not extend");

  SeifertData out;
  out.exceptional = piece.exceptional;
  out.integer_part = piece.integer_part;
  for (const auto& b : piece.boundaries) {
    if (b.label != label) out.boundaries.push_back(b);
  }

  if (added.alpha == 1) {
    // Regular core: e_new = -beta h, so the remaining relation gains beta h.
    if (out.boundaries.empty()) {
      out.integer_part += added.beta;
    } else {
      auto& first = out.boundaries.front();
      first.section = minus(first.section, added.beta, first.fiber);
    }
  } else {
    out.exceptional.push_back(added);
    normalize_with_boundary(out);
  }

  if (out.boundaries.size() == 1 && out.exceptional.size() <= 1) {
    const auto& rest = out.boundaries.front();
    Curve meridian = rest.section;  // c = 0 when there is no exceptional fiber
    Integer core = 1;
    if (!out.exceptional.empty()) {
      // c + e = 0 and alpha e + beta h = 0 give alpha c - beta h = 0.
      const auto& f = out.exceptional.front();
      meridian = Curve{f.alpha * rest.section.m - f.beta * rest.fiber.m, f.alpha * rest.section.l - f.beta * rest.fiber.l};
      core = f.alpha;
    }
    return SolidTorus{rest.label, meridian.slope(), rest.fiber_slope(), core, out};
  }
  return out;
}

SeifertData normalize_closed(const SeifertData& piece) {
  if (!piece.closed()) throw SeifertError("normalize_closed: piece has boundary");
  SeifertData out;
  out.integer_part = piece.integer_part;
  for (const auto& f : piece.exceptional) {
    if (f.alpha <= 0) throw SeifertError("normalize_closed: fiber order must be positive");
    const Integer k = floor_div(f.beta, f.alpha);
    out.integer_part += k;
    const Integer beta = f.beta - k * f.alpha;
    if (f.alpha == 1) continue;
    out.exceptional.push_back(ExceptionalFiber{f.alpha, beta});
  }
  std::sort(out.exceptional.begin(), out.exceptional.end());
  return out;
}

SeifertData reverse_orientation(const SeifertData& piece) {
  SeifertData out = piece;
  out.integer_part = -out.integer_part;
  for (auto& f : out.exceptional) f.beta = -f.beta;
  for (auto& b : out.boundaries) b.section = Curve{-b.section.m, -b.section.l};
  return out;
}

Rational euler_number(const SeifertData& piece) {
  if (!piece.closed()) throw SeifertError("euler_number: piece has boundary");
  Rational sum = Rational(piece.integer_part);
  for (const auto& f : piece.exceptional) sum += Rational(f.beta, f.alpha);
  return -sum;
}

PieceGenerators add_to_presentation(const SeifertData& piece, Presentation& pres) {
  PieceGenerators gens;
  gens.fiber = pres.add_generator();
  Presentation::Row sum_row;
  for (std::size_t i = 0; i < piece.boundaries.size(); ++i) {
    gens.sections.push_back(pres.add_generator());
    sum_row.emplace_back(gens.sections.back(), 1);
  }
  for (const auto& f : piece.exceptional) {
    const std::size_t e = pres.add_generator();
    sum_row.emplace_back(e, 1);
    pres.add_relation({{e, f.alpha}, {gens.fiber, f.beta}});
  }
  if (piece.integer_part != 0) sum_row.emplace_back(gens.fiber, -piece.integer_part);
  pres.add_relation(std::move(sum_row));
  return gens;
}

Integer h1_order(const SeifertData& piece) {
  if (!piece.closed()) throw SeifertError("h1_order: piece has boundary");
  Presentation pres;
  add_to_presentation(piece, pres);
  return group_order(pres);
}

Json to_json(const Integer& x) {
  if (auto v = to_int64(x)) return Json(*v);
  return Json(x.str());
}

Json to_json(const Curve& c) { return Json::array({to_json(c.m), to_json(c.l)}); }

Json to_json(const SeifertData& piece) {
  Json j;
  j["base_genus"] = 0;
  Json boundaries = Json::array();
  for (const auto& b : piece.boundaries) {
    boundaries.push_back(Json{{"label", b.label},
                              {"fiber_slope", b.fiber_slope().to_string()},
                              {"fiber", to_json(b.fiber)},
                              {"section", to_json(b.section)}});
  }
  j["boundaries"] = boundaries;
  Json fibers = Json::array();
  for (const auto& f : piece.exceptional) fibers.push_back(Json{{"alpha", to_json(f.alpha)}, {"beta", to_json(f.beta)}});
  j["exceptional"] = fibers;
  if (piece.closed()) j["integer_part"] = to_json(piece.integer_part);
  return j;
}

}  // namespace dehn
