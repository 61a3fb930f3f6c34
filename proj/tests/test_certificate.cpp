#include <gtest/gtest.h>

#include "dehn/certificate.hpp"
#include "dehn/jsj.hpp"
#include "support/generators.hpp"

using namespace dehn;

namespace {

const CertificateCheck& check(const Certificate& c, const std::string& id) {
  for (const auto& k : c.checks) {
    if (k.id == id) return k;
  }
  throw std::out_of_range(id);
}

// Distance from p/q to the nearest integer outside {-1, 0, 1}, scanned by brute force.
Rational gap_oracle(std::int64_t p, std::int64_t q) {
  const Rational x(p, q);
  Rational best = -1;
  for (std::int64_t n = -std::abs(p) - 3; n <= std::abs(p) + 3; ++n) {
    if (n >= -1 && n <= 1) continue;
    const Rational d = abs(x - Rational(n));
    if (best < 0 || d < best) best = d;
  }
  return best;
}

}  // namespace

TEST(Certificate, HyperbolicConditional) {
  const auto c = certify_characterising(parse_knot("hyp(\"K\",1)"), Slope::normalized(3, 25));
  EXPECT_EQ(c.m_value, Rational(47));
  for (const auto& id : {"c1", "c2", "c3", "c4", "c5"}) EXPECT_TRUE(check(c, id).holds) << id;
  EXPECT_FALSE(check(c, "c6").applicable);
  EXPECT_TRUE(check(c, "c6").holds);
  EXPECT_EQ(c.cited, CitedCase::none);
  EXPECT_EQ(c.verdict, kVerdictConditional);
}

TEST(Certificate, TorusKnotCited) {
  const auto c = certify_characterising(parse_knot("torus(3,2)"), Slope::normalized(7, 2));
  EXPECT_EQ(c.cited, CitedCase::torus_knot);
  EXPECT_TRUE(c.exceptions_not_computed);
  EXPECT_EQ(c.verdict, kVerdictCited);
  EXPECT_FALSE(check(c, "c1").holds);
  EXPECT_FALSE(check(c, "c3").holds);
}

TEST(Certificate, TorusKnotIntegerSlopeIsNotCited) {
  const auto c = certify_characterising(parse_knot("torus(3,2)"), Slope::integer(7));
  EXPECT_EQ(c.cited, CitedCase::none);
  EXPECT_NE(c.verdict, kVerdictCited);
}

TEST(Certificate, CableOfHyperbolicSixthCheck) {
  const auto c = certify_characterising(parse_knot("cable(13,2; hyp(\"K\",1))"), Slope::normalized(1, 30));
  const auto& c6 = check(c, "c6");
  EXPECT_TRUE(c6.applicable);
  EXPECT_EQ(c6.value, "779");
  EXPECT_EQ(c6.threshold, "> 2");
  EXPECT_TRUE(c6.holds);
  EXPECT_EQ(c.verdict, kVerdictConditional);
}

TEST(Certificate, UnknotAlwaysCited) {
  const auto c = certify_characterising(KnotExpr::unknot(), Slope::normalized(5, 7));
  EXPECT_EQ(c.cited, CitedCase::unknot);
  EXPECT_EQ(c.verdict, kVerdictCited);
  EXPECT_FALSE(c.exceptions_not_computed);
}

TEST(Certificate, MeridianRejected) {
  EXPECT_THROW(certify_characterising(parse_knot("torus(3,2)"), Slope::infinity()), SlopeError);
}

TEST(Certificate, AllSixChecksAlwaysPresent) {
  testgen::Rng rng(501);
  for (int i = 0; i < 2000; ++i) {
    const KnotExpr e = testgen::canonical_knot(rng, 2);
    const Slope s = testgen::slope(rng, 80, 40);
    if (s.is_infinite()) continue;
    const auto c = certify_characterising(e, s);
    ASSERT_EQ(c.checks.size(), 6u);
    for (std::size_t k = 0; k < 6; ++k) {
      ASSERT_EQ(c.checks[k].id, "c" + std::to_string(k + 1));
      if (!c.checks[k].applicable) ASSERT_TRUE(c.checks[k].holds);
    }
    ASSERT_EQ(c.verdict, verdict_for(c.checks, c.cited));
  }
}

TEST(Certificate, ThresholdsMatchDirectComputation) {
  testgen::Rng rng(502);
  for (int i = 0; i < 3000; ++i) {
    const KnotExpr e = testgen::canonical_knot(rng, 2);
    const auto p = testgen::uniform(rng, -120, 120);
    const auto q = testgen::uniform(rng, 1, 40);
    if (std::gcd(std::abs(p), q) != 1) continue;
    const Slope s = Slope::normalized(p, q);
    const auto c = certify_characterising(e, s);
    const auto d = jsj(e);
    const Integer max_order = max_exceptional_order(d);
    ASSERT_EQ(c.m_value, Rational(q) * gap_oracle(p, q));
    ASSERT_EQ(check(c, "c1").holds, std::abs(p) <= q);
    ASSERT_EQ(check(c, "c2").holds, c.m_value > Rational(max_order));
    ASSERT_EQ(check(c, "c3").holds, q >= 9);
    ASSERT_EQ(check(c, "c4").holds, q > 2);
    ASSERT_EQ(check(c, "c5").holds, q >= 22);
    if (const auto fiber = outer_fiber_slope(d)) {
      ASSERT_TRUE(check(c, "c6").applicable);
      ASSERT_EQ(check(c, "c6").holds, distance(s, *fiber) > max_order);
    } else {
      ASSERT_FALSE(check(c, "c6").applicable);
    }
  }
}

TEST(Verdict, PureFunctionOfChecks) {
  std::vector<CertificateCheck> checks(6);
  for (std::size_t k = 0; k < 6; ++k) {
    checks[k].id = "c" + std::to_string(k + 1);
    checks[k].holds = true;
  }
  EXPECT_EQ(verdict_for(checks, CitedCase::none), kVerdictConditional);
  EXPECT_EQ(verdict_for(checks, CitedCase::unknot), kVerdictCited);
  for (std::size_t k = 0; k < 6; ++k) {
    auto failing = checks;
    failing[k].holds = false;
    const auto v = verdict_for(failing, CitedCase::none);
    EXPECT_NE(v, kVerdictConditional);
    EXPECT_NE(v, kVerdictCited);
    EXPECT_NE(v.find(failing[k].id), std::string::npos) << v;
    EXPECT_EQ(verdict_for(failing, CitedCase::torus_knot), kVerdictCited);
  }
}

TEST(Certificate, JsonShape) {
  const Json j = to_json(certify_characterising(parse_knot("hyp(\"K\",1)"), Slope::normalized(3, 25)));
  EXPECT_EQ(j["schema"], "dehn.certificate/1");
  EXPECT_EQ(j["m_value"], "47");
  EXPECT_EQ(j["checks"].size(), 6u);
  EXPECT_EQ(j["verdict"], kVerdictConditional);
}
