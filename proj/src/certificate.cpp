#include "dehn/certificate.hpp"

#include "dehn/jsj.hpp"

namespace dehn {

namespace {

const char* const kCiteRegime =
    "characterising-slope theorem for knots: holds once |p| <= |q| and |q| is sufficiently large";
const char* const kCiteGap =
    "characterising-slope theorem in terms of |q| * min |p/q - n| over integers n outside {-1, 0, 1}";
const char* const kCiteDistance8 =
    "distance-8 bound on exceptional fillings: a hyperbolic knot's p/q surgery is hyperbolic if |q| >= 9";
const char* const kCiteGordonLuecke =
    "Gordon-Luecke: toroidal fillings of hyperbolic knots have |q| <= 2";
const char* const kCiteLength =
    "cusp length bound length >= (sqrt(3)/6) * distance to the meridian, exceeding 2*pi once |q| >= 22 "
    "(maximal-cusp hypothesis assumed, not verified)";
const char* const kCiteFiber =
    "surgered Seifert piece gains a fiber of order |qrs - p|; it is recognisable when larger than any exceptional "
    "fiber of the exterior";
const char* const kCiteUnknot =
    "Kronheimer-Mrowka-Ozsvath-Szabo: every slope is characterising for the unknot";
const char* const kCiteTorus =
    "McCoy: for a torus knot every non-integral slope is characterising, with at most finitely many exceptions";

CertificateCheck make(std::string id, std::string description, std::string value, std::string threshold,
                      bool holds, const char* citation) {
  return CertificateCheck{std::move(id), std::move(description), std::move(value), std::move(threshold),
                          true,          holds,                  citation};
}

std::string cited_name(CitedCase c) {
  switch (c) {
    case CitedCase::none: return "none";
    case CitedCase::unknot: return "unknot";
    case CitedCase::torus_knot: return "torus-knot";
  }
  return "none";
}

}  // namespace

std::string verdict_for(const std::vector<CertificateCheck>& checks, CitedCase cited) {
  if (cited != CitedCase::none) return kVerdictCited;
  for (const auto& c : checks) {
    if (!c.holds) return "fails condition " + c.id;
  }
  return kVerdictConditional;
}

Certificate certify_characterising(const KnotExpr& e, const Slope& slope) {
  if (slope.is_infinite()) throw SlopeError("certify_characterising: the meridian 1/0 is not a surgery slope");
  Certificate cert;
  cert.knot = e;
  cert.slope = slope;
  const Integer ap = abs(slope.p());
  const Integer aq = slope.q();
  cert.m_value = integer_gap(slope).m_value;

  const JsjDecomposition d = jsj(e);
  const Integer max_order = max_exceptional_order(d);

  cert.checks.push_back(make("c1", "|p| <= |q|", to_string(ap) + " <= " + to_string(aq), "|p| <= |q|", ap <= aq,
                             kCiteRegime));
  cert.checks.push_back(make("c2", "integer-gap quantity m = |q| * gap exceeds the largest exceptional order of the exterior",
                             to_string(cert.m_value), "> " + to_string(max_order),
                             cert.m_value > Rational(max_order), kCiteGap));
  cert.checks.push_back(make("c3", "|q| >= 9", to_string(aq), ">= 9", aq >= 9, kCiteDistance8));
  cert.checks.push_back(make("c4", "|q| > 2", to_string(aq), "> 2", aq > 2, kCiteGordonLuecke));
  cert.checks.push_back(make("c5", "|q| >= 22, so (sqrt(3)/6)|q| > 2*pi", to_string(aq), ">= 22", aq >= 22,
                             kCiteLength));

  CertificateCheck c6 = make("c6", "appended fiber order exceeds the largest exceptional order of the exterior", "",
                             "> " + to_string(max_order), true, kCiteFiber);
  if (const auto fiber = outer_fiber_slope(d)) {
    const Integer order = distance(slope, *fiber);
    c6.value = to_string(order);
    c6.holds = order > max_order;
  } else {
    c6.applicable = false;
    c6.value = "outermost piece is hyperbolic";
  }
  cert.checks.push_back(std::move(c6));

  if (e.is<Unknot>()) {
    cert.cited = CitedCase::unknot;
    cert.cited_theorem = kCiteUnknot;
  } else if (e.is<TorusKnot>() && aq >= 2) {
    cert.cited = CitedCase::torus_knot;
    cert.cited_theorem = kCiteTorus;
    cert.exceptions_not_computed = true;
  }
  cert.verdict = verdict_for(cert.checks, cert.cited);
  return cert;
}

Json to_json(const Certificate& c) {
  Json j;
  j["schema"] = "dehn.certificate/1";
  j["knot"] = print(c.knot);
  j["slope"] = c.slope.to_string();
  j["m_value"] = to_string(c.m_value);
  j["m_value_approx"] = c.m_value.convert_to<double>();
  Json checks = Json::array();
  for (const auto& k : c.checks) {
    checks.push_back(Json{{"id", k.id},
                          {"description", k.description},
                          {"value", k.value},
                          {"threshold", k.threshold},
                          {"applicable", k.applicable},
                          {"holds", k.holds},
                          {"citation", k.citation}});
  }
  j["checks"] = checks;
  j["cited_case"] = cited_name(c.cited);
  if (c.cited != CitedCase::none) j["cited_theorem"] = c.cited_theorem;
  j["exceptions_not_computed"] = c.exceptions_not_computed;
  j["verdict"] = c.verdict;
  return j;
}

}  // namespace dehn
