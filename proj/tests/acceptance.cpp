// Acceptance runner: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "dehn/atlas.hpp"
#include "dehn/certificate.hpp"
#include "dehn/geometry.hpp"
#include "dehn/jsj.hpp"
#include "support/generators.hpp"

using namespace dehn;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::vector<KnotExpr> homology_corpus() {
  AtlasConfig cfg;
  cfg.max_rs = 6;
  cfg.max_depth = 2;
  cfg.max_summands = 3;
  return atlas_knots(cfg);
}

bool is_torus_or_cable(const KnotExpr& e) { return e.is<TorusKnot>() || e.is<Cable>(); }

// 1. |H1| of every classified surgered manifold equals |p|.
Outcome homology_oracle() {
  const auto corpus = homology_corpus();
  std::size_t cases = 0, failures = 0, refusals = 0;
  std::string first_failure;
  for (const auto& e : corpus) {
    const JsjDecomposition d = jsj(e);
    const std::int64_t p_bound_extra = is_torus_or_cable(e) ? 0 : 40;
    for (std::int64_t q = 9; q <= 20; ++q) {
      const std::int64_t pmax = is_torus_or_cable(e) ? q : p_bound_extra;
      for (std::int64_t p = -pmax; p <= pmax; ++p) {
        if (std::gcd(std::abs(p), q) != 1) continue;
        const Slope s = Slope::normalized(p, q);
        ++cases;
        try {
          const auto c = classify_surgery(e, d, s);
          if (h1_order(c) != std::abs(p)) {
            ++failures;
            if (first_failure.empty()) first_failure = print(e) + " at " + s.to_string();
          }
        } catch (const RegimeRefusal&) {
          ++refusals;
        }
      }
    }
  }
  std::ostringstream os;
  os << corpus.size() << " knots, " << cases << " slopes, " << failures << " mismatches, " << refusals
     << " refusals";
  if (!first_failure.empty()) os << "; first mismatch " << first_failure;
  return {failures == 0 && refusals == 0 && cases > 0, os.str()};
}

// 2. The appended fiber order |qrs - p| is at least |q|.
Outcome fiber_order_bound() {
  std::size_t formula_cases = 0, classified = 0, failures = 0;
  for (std::int64_t r = -6; r <= 6; ++r) {
    for (std::int64_t s = -6; s <= 6; ++s) {
      if (std::abs(r) < 2 || std::abs(s) < 2) continue;
      const bool knot = std::gcd(std::abs(r), std::abs(s)) == 1;
      const KnotExpr e = knot ? canonicalize(KnotExpr::torus(r, s)) : KnotExpr::unknot();
      const JsjDecomposition d = knot ? jsj(e) : JsjDecomposition{};
      for (std::int64_t q = 9; q <= 30; ++q) {
        for (std::int64_t p = -q; p <= q; ++p) {
          if (std::gcd(std::abs(p), q) != 1) continue;
          ++formula_cases;
          const std::int64_t order = std::abs(q * r * s - p);
          if (order < q) ++failures;
          if (!knot) continue;
          ++classified;
          const auto c = classify_surgery(e, d, Slope::normalized(p, q));
          if (c.core.kind != SurgeryCore::Kind::exceptional_fiber || c.core.order != order) ++failures;
        }
      }
    }
  }
  std::ostringstream os;
  os << formula_cases << " (r,s,p/q) cases, " << classified << " classified torus-knot surgeries, " << failures
     << " violations";
  return {failures == 0, os.str()};
}

// 3. Reduction and direct filling give the same closed Seifert manifold.
Outcome reduction_equivalence() {
  const auto torus = atlas_torus_knots(6);
  std::size_t cases = 0, agree = 0, divisibility = 0, alt_h1_ok = 0;
  for (const auto& companion : torus) {
    for (std::int64_t s = 2; s <= 6; ++s) {
      for (std::int64_t r = -6; r <= 6; ++r) {
        if (std::abs(r) < 2 || std::gcd(std::abs(r), s) != 1) continue;
        const KnotExpr cable = KnotExpr::cable(r, s, companion);
        for (std::int64_t q = 2; q <= 5; ++q) {
          for (std::int64_t sign : {-1, 1}) {
            const Slope slope = Slope::normalized(q * r * s + sign, q);
            ++cases;
            // (a) fill the cable space; the solid torus meridian lands on the
            // companion and the companion exterior is filled along it.
            const SurgeredManifold direct = surgered_manifold(cable, slope);
            // (b) twist the meridian along the fiber and fill the companion.
            const CableReduction red = reduce_cable_surgery(cable, slope);
            const auto c = fill_outermost(red.companion, jsj(red.companion), red.slope);
            const auto& filled = std::get<FilledSeifert>(c.pieces.front()).seifert;
            if (direct.closed_seifert && *direct.closed_seifert == normalize_closed(filled)) ++agree;
            const Integer aq = abs(slope.q()), aq2 = abs(red.slope.q());
            if (aq2 % aq == 0 && aq < aq2) ++divisibility;
            // The other candidate companion slope (1 + k r)/(k s) changes |H1|.
            const Integer k = red.twists;
            const Slope alt = Slope::normalized(1 + k * r, k * s);
            if (abs(alt.p()) != abs(slope.p())) ++alt_h1_ok;
          }
        }
      }
    }
  }
  std::ostringstream os;
  os << cases << " cables of torus knots at distance 1: " << agree << " agree, " << divisibility
     << " satisfy q | q' and |q| < |q'|; companion slope p/(q s^2) confirmed, (1+kr)/(ks) changes |p| in "
     << alt_h1_ok << " cases";
  return {cases >= 500 && agree == cases && divisibility == cases, os.str()};
}

// 4. (sqrt(3)/6) * 22 > 2 pi > (sqrt(3)/6) * 21.
Outcome length_threshold() {
  const double at22 = length_lower_bound(22);
  const double at21 = length_lower_bound(21);
  const bool ok = at22 - kTwoPi > 1e-9 && kTwoPi - at21 > 1e-9 && exceeds_2pi(at22) && !exceeds_2pi(at21);
  int first = -1;
  for (int q = 0; q < 100 && first < 0; ++q) {
    if (exceeds_2pi(length_lower_bound(q))) first = q;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "bound(22) = %.10f, bound(21) = %.10f, 2pi = %.10f, first passing |q| = %d", at22,
                at21, kTwoPi, first);
  return {ok && first == 22, buf};
}

// 5. Volume factor at 4 pi, low < high and monotonicity on a grid.
Outcome volume_sandwich() {
  const double factor = volume_bounds(1.0, 2 * kTwoPi).factor;
  const double expected = std::pow(0.75, 1.5);
  bool ok = std::abs(factor - expected) <= 1e-12;
  const double vol = 2.029883212819307;  // figure-eight knot complement
  double prev = -1;
  std::size_t violations = 0;
  for (int i = 1; i <= 1000; ++i) {
    const double l = kTwoPi * (1.0 + 0.01 * i);
    const auto v = volume_bounds(vol, l);
    if (!(v.low < v.high) || !(v.low > prev)) ++violations;
    prev = v.low;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "factor(4pi) = %.15f vs (3/4)^(3/2) = %.15f; %zu grid violations over 1000 points",
                factor, expected, violations);
  return {ok && violations == 0, buf};
}

// 6. m_value >= |q| whenever |p| <= |q| <= 50.
Outcome integer_gap_regime() {
  std::size_t cases = 0, failures = 0;
  for (std::int64_t q = 1; q <= 50; ++q) {
    for (std::int64_t p = -q; p <= q; ++p) {
      if (std::gcd(std::abs(p), q) != 1) continue;
      ++cases;
      if (integer_gap(Slope::normalized(p, q)).m_value < Rational(q)) ++failures;
    }
  }
  return {failures == 0, std::to_string(cases) + " slopes, " + std::to_string(failures) + " below |q|"};
}

// 7. Parser round trip and canonicalization idempotence.
Outcome parser_properties() {
  std::mt19937_64 rng(20261016);
  std::size_t roundtrip_fail = 0, idempotence_fail = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const KnotExpr e = testgen::canonical_knot(rng, 3);
    const std::string text = testgen::respace(print(e), rng);
    try {
      if (!(parse_knot(text) == e) || print(parse_knot(print(e))) != print(e)) ++roundtrip_fail;
    } catch (const std::exception&) {
      ++roundtrip_fail;
    }
  }
  for (int i = 0; i < n; ++i) {
    const KnotExpr raw = testgen::raw_knot(rng, 3);
    const KnotExpr once = canonicalize(raw);
    if (!(canonicalize(once) == once) || print(canonicalize(parse_knot(print(once)))) != print(once))
      ++idempotence_fail;
  }
  return {roundtrip_fail == 0 && idempotence_fail == 0,
          std::to_string(n) + " round trips (" + std::to_string(roundtrip_fail) + " failures), " + std::to_string(n) +
              " idempotence checks (" + std::to_string(idempotence_fail) + " failures)"};
}

// 8. No certificate for a knot with a hyperbolic atom claims more than the
// conditional verdict.
Outcome certificate_honesty() {
  std::vector<KnotExpr> corpus = {
      KnotExpr::hyp("K", 1),
      KnotExpr::hyp("4_1", 1, {CuspShape{{1, 0}, {0.5, 2.5}}}),
      KnotExpr::hyp("W", 2),
      KnotExpr::hyp("L3", 3),
  };
  const std::size_t atoms = corpus.size();
  for (std::size_t i = 0; i < atoms; ++i) {
    for (auto [r, s] : {std::pair{3, 2}, {13, 2}, {-5, 3}, {1, 2}})
      corpus.push_back(KnotExpr::cable(r, s, corpus[i]));
    corpus.push_back(KnotExpr::cable(2, 3, KnotExpr::cable(7, 2, corpus[i])));
    corpus.push_back(canonicalize(KnotExpr::sum({corpus[i], KnotExpr::torus(3, 2)})));
  }
  std::string output;
  std::size_t certificates = 0;
  for (const auto& e : corpus) {
    for (std::int64_t q = 1; q <= 40; ++q) {
      for (std::int64_t p = -45; p <= 45; ++p) {
        if (std::gcd(std::abs(p), q) != 1) continue;
        output += to_json(certify_characterising(e, Slope::normalized(p, q))).dump() + "\n";
        ++certificates;
      }
    }
  }
  std::size_t bad = 0, lines = 0, conditional = 0;
  std::istringstream in(output);
  std::string line;
  while (std::getline(in, line)) {
    ++lines;
    const Json j = Json::parse(line);
    const std::string verdict = j.at("verdict").get<std::string>();
    const bool allowed = verdict == kVerdictConditional || verdict.rfind("fails condition c", 0) == 0;
    if (!allowed || line.find("characterising by cited theorem") != std::string::npos ||
        line.find("\"cited_case\":\"none\"") == std::string::npos)
      ++bad;
    if (verdict == kVerdictConditional) ++conditional;
  }
  for (const char* phrase : {"is characterising\"", "unconditional", "proven characterising"}) {
    if (output.find(phrase) != std::string::npos) ++bad;
  }
  return {bad == 0 && lines == certificates && conditional > 0,
          std::to_string(certificates) + " certificates scanned, " + std::to_string(conditional) +
              " conditional passes, " + std::to_string(bad) + " over-claims"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 homology oracle |H1| = |p|", homology_oracle},
      {"2 fiber order |qrs - p| >= |q|", fiber_order_bound},
      {"3 reduction and direct classification agree", reduction_equivalence},
      {"4 length threshold 22 vs 21", length_threshold},
      {"5 volume sandwich", volume_sandwich},
      {"6 integer-gap quantity m >= |q|", integer_gap_regime},
      {"7 parser round trip and idempotence", parser_properties},
      {"8 certificate honesty", certificate_honesty},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
