#pragma once

#include <string>
#include <vector>

#include "dehn/integer.hpp"
#include "dehn/knot_expr.hpp"
#include "dehn/slope.hpp"

namespace dehn {

struct CertificateCheck {
  std::string id;           // "c1" .. "c6"
  std::string description;
  std::string value;        // exact value that was compared
  std::string threshold;
  bool applicable = true;   // an inapplicable check holds vacuously
  bool holds = false;
  std::string citation;
};

enum class CitedCase { none, unknot, torus_knot };

struct Certificate {
  KnotExpr knot;
  Slope slope = Slope::infinity();
  Rational m_value;
  std::vector<CertificateCheck> checks;
  CitedCase cited = CitedCase::none;
  std::string cited_theorem;
  bool exceptions_not_computed = false;
  std::string verdict;
};

inline const char* const kVerdictConditional =
    "meets all explicit sub-criteria; global constant C(K) is non-effective";
inline const char* const kVerdictCited = "characterising by cited theorem (unknot/torus-knot cases)";

/// The verdict string determined by the checks and the cited case.
std::string verdict_for(const std::vector<CertificateCheck>& checks, CitedCase cited);

/// Evaluates every explicit threshold on the way to a characterising-slope
/// claim. All six checks are always reported. Throws SlopeError for 1/0.
Certificate certify_characterising(const KnotExpr& e, const Slope& slope);

Json to_json(const Certificate& c);

}  // namespace dehn
