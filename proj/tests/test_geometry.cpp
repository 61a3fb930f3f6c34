#include <gtest/gtest.h>

#include <cmath>

#include "dehn/geometry.hpp"
#include "support/generators.hpp"

using namespace dehn;

namespace {

const CuspShape kSquare{{1.0, 0.0}, {0.0, 1.0}};

}  // namespace

TEST(SlopeLength, Examples) {
  EXPECT_DOUBLE_EQ(slope_length(kSquare, Slope::normalized(3, 4)), 5.0);
  const CuspShape hex{{1.0, 0.0}, {0.5, std::sqrt(3.0) / 2}};
  EXPECT_NEAR(slope_length(hex, Slope::normalized(1, 1)), std::sqrt(3.0), 1e-12);
  EXPECT_DOUBLE_EQ(slope_length(kSquare, Slope::infinity()), 1.0);
}

TEST(SlopeLength, DegenerateLatticeRejected) {
  EXPECT_THROW(slope_length(CuspShape{{1.0, 2.0}, {2.0, 4.0}}, Slope::normalized(1, 2)), GeometryError);
  EXPECT_THROW(slope_length(CuspShape{{0.0, 0.0}, {0.0, 1.0}}, Slope::normalized(1, 2)), GeometryError);
}

TEST(SlopeLength, HomogeneousAndTriangle) {
  testgen::Rng rng(601);
  for (int i = 0; i < 5000; ++i) {
    const CuspShape cusp = testgen::cusp_shape(rng);
    const auto p = testgen::uniform(rng, -40, 40), q = testgen::uniform(rng, -40, 40);
    const auto p2 = testgen::uniform(rng, -40, 40), q2 = testgen::uniform(rng, -40, 40);
    const auto norm = [&](double a, double b) {
      return std::hypot(a * cusp.meridian[0] + b * cusp.longitude[0], a * cusp.meridian[1] + b * cusp.longitude[1]);
    };
    const double n = norm(p, q), n2 = norm(p2, q2), sum = norm(p + p2, q + q2);
    ASSERT_LE(sum, n + n2 + 1e-9 * (1 + n + n2));
    ASSERT_NEAR(norm(3.0 * p, 3.0 * q), 3 * n, 1e-9 * (1 + n));
    if ((p != 0 || q != 0) && std::gcd(std::abs(p), std::abs(q)) == 1) {
      const Slope s = Slope::normalized(p, q);
      ASSERT_NEAR(slope_length(cusp, s), n, 1e-9 * (1 + n));
    }
  }
}

TEST(LowerBound, Examples) {
  EXPECT_NEAR(length_lower_bound(Integer(22)), std::sqrt(3.0) / 6 * 22, 1e-12);
  EXPECT_TRUE(exceeds_6(length_lower_bound(Integer(21))));
  EXPECT_FALSE(exceeds_6(length_lower_bound(Integer(20))));
  EXPECT_TRUE(exceeds_2pi(length_lower_bound(Integer(22))));
  EXPECT_FALSE(exceeds_2pi(length_lower_bound(Integer(21))));
}

TEST(LowerBound, Monotone) {
  double prev = 0;
  for (int d = 1; d < 5000; ++d) {
    const double b = length_lower_bound(Integer(d));
    ASSERT_GT(b, prev);
    prev = b;
  }
}

TEST(LowerBound, HoldsOnHexagonalCusp) {
  // The hexagonal lattice with shortest vector 1 scaled so the shortest slope
  // has length 1; sqrt(3)/6 * |q| is then below the area bound.
  const CuspShape hex{{1.0, 0.0}, {0.5, std::sqrt(3.0) / 2}};
  for (std::int64_t q = 1; q <= 60; ++q) {
    for (std::int64_t p = -60; p <= 60; ++p) {
      if (std::gcd(std::abs(p), q) != 1) continue;
      ASSERT_GE(slope_length(hex, Slope::normalized(p, q)) + 1e-12, length_lower_bound(Integer(q)));
    }
  }
}

TEST(Thresholds, Tolerance) {
  EXPECT_FALSE(exceeds_2pi(kTwoPi));
  EXPECT_FALSE(exceeds_2pi(kTwoPi + kLengthTolerance / 2));
  EXPECT_TRUE(exceeds_2pi(kTwoPi + 2 * kLengthTolerance));
  EXPECT_FALSE(exceeds_6(6.0));
  EXPECT_TRUE(exceeds_6(6.0 + 1e-6));
}

TEST(VolumeBounds, Examples) {
  const auto v = volume_bounds(2.0, 4 * M_PI);
  EXPECT_NEAR(v.factor, std::pow(0.75, 1.5), 1e-12);
  EXPECT_NEAR(v.low, 2.0 * v.factor, 1e-12);
  EXPECT_EQ(v.high, 2.0);
  EXPECT_GT(volume_bounds(1.0, 1e6).factor, 1 - 1e-10);
  EXPECT_THROW(volume_bounds(1.0, kTwoPi), GeometryError);
  EXPECT_THROW(volume_bounds(1.0, 3.0), GeometryError);
  EXPECT_THROW(volume_bounds(0.0, 10.0), GeometryError);
  EXPECT_THROW(volume_bounds(-1.0, 10.0), GeometryError);
}

TEST(VolumeBounds, FactorIncreasesToOne) {
  double prev = 0;
  for (double l = 6.3; l < 1000; l *= 1.1) {
    const auto v = volume_bounds(3.0, l);
    ASSERT_GT(v.factor, prev);
    ASSERT_LT(v.factor, 1.0);
    ASSERT_LT(v.low, v.high);
    prev = v.factor;
  }
}

TEST(SixTheorem, Examples) {
  const auto r = six_theorem_check({6.1, 7.0});
  EXPECT_TRUE(r.all_exceed_6);
  EXPECT_FALSE(r.all_exceed_2pi);
  EXPECT_EQ(r.count, 2u);
  EXPECT_FALSE(six_theorem_check({6.0}).all_exceed_6);
  const auto mid = six_theorem_check({6.2, 6.9});
  EXPECT_TRUE(mid.all_exceed_6);
  EXPECT_FALSE(mid.all_exceed_2pi);
  const auto empty = six_theorem_check({});
  EXPECT_TRUE(empty.all_exceed_6);
  EXPECT_TRUE(empty.all_exceed_2pi);
  EXPECT_EQ(empty.count, 0u);
}

TEST(LengthReport, UsesCuspWhenGiven) {
  const auto bound_only = length_report(Slope::normalized(1, 22), std::nullopt);
  EXPECT_FALSE(bound_only.length.has_value());
  EXPECT_TRUE(bound_only.exceeds_2pi);
  const auto measured = length_report(Slope::normalized(1, 22), CuspShape{{1.0, 0.0}, {0.0, 0.2}});
  ASSERT_TRUE(measured.length.has_value());
  EXPECT_NEAR(*measured.length, std::hypot(1.0, 4.4), 1e-12);
  EXPECT_FALSE(measured.exceeds_6);
}

TEST(CuspFiles, Text) {
  const auto cusps = parse_cusp_text("# two cusps\n1 0 0 1\n\n  0.5 0.25   -1 2 # trailing\n");
  ASSERT_EQ(cusps.size(), 2u);
  EXPECT_EQ(cusps[1].meridian[1], 0.25);
  EXPECT_EQ(cusps[1].longitude[0], -1.0);
  EXPECT_THROW(parse_cusp_text("1 0 0\n"), GeometryError);
  EXPECT_THROW(parse_cusp_text("1 0 0 1 5\n"), GeometryError);
  EXPECT_THROW(parse_cusp_text("1 0 zero 1\n"), GeometryError);
}

TEST(CuspFiles, Json) {
  const auto a = parse_cusp_file(R"([{"meridian": [1, 0], "longitude": [0.3, 2.5]}])");
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0].longitude[1], 2.5);
  const auto b = parse_cusp_file(R"(  {"cusps": [{"meridian": [1, 0], "longitude": [0, 1]}, {"meridian": [2, 0], "longitude": [0, 3]}]})");
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[1].meridian[0], 2.0);
  EXPECT_THROW(parse_cusp_file(R"([{"meridian": [1, 0]}])"), GeometryError);
  EXPECT_THROW(parse_cusp_file("[1, 2"), GeometryError);
  EXPECT_EQ(parse_cusp_file("1 0 0 1").size(), 1u);
}

TEST(Json, LengthReport) {
  const Json j = to_json(length_report(Slope::normalized(3, 4), kSquare));
  EXPECT_EQ(j["slope"], "3/4");
  EXPECT_EQ(j["length"], 5.0);
  EXPECT_EQ(j["exceeds_6"], false);
}
