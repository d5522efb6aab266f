#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bmetric/constructions.hpp"
#include "bmetric/error.hpp"
#include "bmetric/metric.hpp"
#include "bmetric/verify.hpp"

using namespace bmetric;

namespace {

Scene2D slit_box() { return Scene2D::box({-2, -2}, {2, 2}, {{{0, -1}, {0, 1}}}); }

}  // namespace

TEST(Schedule, ParseAndValidate) {
  auto s = OffsetSchedule::parse("0.5,0.5,11");
  EXPECT_EQ(s.count, 11);
  EXPECT_EQ(s.offsets().size(), 11u);
  EXPECT_DOUBLE_EQ(s.offsets()[3], 0.0625);
  EXPECT_THROW(OffsetSchedule::parse("1,2,3"), ParameterError);
  EXPECT_THROW(OffsetSchedule::parse("1;0.5;3"), ParameterError);
  EXPECT_THROW(OffsetSchedule::parse("1,0.5,3x"), ParameterError);
  EXPECT_EQ(OffsetSchedule::parse(s.str()).initial, s.initial);
}

TEST(Rho, ConvexIsEuclideanAtEveryLevel) {
  Scene2D box = Scene2D::box({0, 0}, {2, 2});
  // One boundary point so that offsets are actually used.
  Point2 x{0.0, 0.7}, y{1.5, 1.9};
  RhoEstimate e = rho(box, x, y);
  EXPECT_TRUE(e.converged);
  ASSERT_FALSE(e.offsets.empty());
  EXPECT_NEAR(e.value, dist(x, y), 2 * e.offsets.back());
  for (std::size_t i = 0; i < e.lengths.size(); ++i)
    EXPECT_NEAR(e.lengths[i], dist(x, y), 1.5 * e.offsets[i]) << i;
}

TEST(Rho, IdenticalPointsGiveZero) {
  for (Point2 p : {Point2{0.5, 0.5}, Point2{0.0, 0.5}, Point2{0.0, 0.0}}) {
    RhoEstimate e = rho(slit_box(), p, p);
    EXPECT_EQ(e.value, 0.0);
    EXPECT_TRUE(e.converged);
  }
}

TEST(Rho, RejectsPointsOutsideClosure) {
  EXPECT_THROW(rho(slit_box(), {3, 0}, {0, 0}), DomainError);
}

TEST(Rho, TwoPointsOnSlitUseTheSameSide) {
  RhoEstimate e = rho(slit_box(), {0.0, 0.0}, {0.0, 0.5});
  EXPECT_TRUE(e.converged);
  EXPECT_NEAR(e.value, 0.5, 1e-6);
}

TEST(Rho, SymmetricOnRandomSlitScenes) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    auto rs = random_slit_scene(seed);
    MetricEngine eng(rs.scene);
    auto pts = sample_scene_points(rs.scene, 8, 0.5, seed);
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        double a = eng.rho(pts[i], pts[j]).value, b = eng.rho(pts[j], pts[i]).value;
        EXPECT_NEAR(a, b, 1e-9 * std::max(1.0, a));
        EXPECT_GE(a, dist(pts[i], pts[j]) - 1e-9);
      }
  }
}

TEST(Rho, CombTableIsMonotoneAndGrowsWithTruncation) {
  const Point2 near_o{0.0, 0.0}, E{1.0, 1.0};
  RhoEstimate e16 = rho(comb_scene(16), near_o, E);
  ASSERT_TRUE(e16.converged);
  for (std::size_t i = 1; i < e16.lengths.size(); ++i) EXPECT_GE(e16.lengths[i], e16.lengths[i - 1] - 1e-12);
  double prev = 0.0;
  for (int n : {4, 8, 16, 32}) {
    double v = rho(comb_scene(n), near_o, E).value;
    EXPECT_GT(v, prev);
    EXPECT_GT(v, norm(E));
    prev = v;
  }
}

TEST(Rho, MultipleApproachSectorsTakeTheShorterSide) {
  // A point on the slit interior is reached from either side; the metric is
  // the smaller of the two one-sided values.
  Scene2D s = slit_box();
  Point2 on{0.0, 0.2};
  EXPECT_NEAR(rho(s, on, {-1, 0.2}).value, 1.0, 1e-6);
  EXPECT_NEAR(rho(s, on, {1, 0.2}).value, 1.0, 1e-6);
}

TEST(Geodesic, ConvexIsStraight) {
  Geodesic g = geodesic(Scene2D::box({0, 0}, {2, 2}), {0.3, 0.4}, {1.7, 1.5});
  EXPECT_EQ(g.path.size(), 2u);
  EXPECT_NEAR(g.length, dist(Point2{0.3, 0.4}, Point2{1.7, 1.5}), 1e-15);
  EXPECT_LE(g.additivity_deviation, 1e-12);
}

TEST(Geodesic, SlitTwoLegsAndUpperDirection) {
  Geodesic g = geodesic(slit_box(), {-1, 0}, {1, 0});
  EXPECT_EQ(g.path.size(), 3u);
  EXPECT_NEAR(g.length, 2 * std::sqrt(2.0), 1e-9);
  EXPECT_LE(g.additivity_deviation, 1e-6 * g.length);
  EXPECT_LE(g.upper_violation, 1e-6 * g.length);
}

TEST(Geodesic, CombNeverShortensSegments) {
  Geodesic g = geodesic(comb_scene(8), {0, 0}, {1, 1});
  EXPECT_LE(g.upper_violation, 1e-6 * g.length);
  EXPECT_NEAR(g.path.length(), g.length, 1e-9);
}

TEST(LengthConvergence, ConvexExactAndSlitConverges) {
  OffsetSchedule sch{1.0, 0.5, 11};
  auto c = length_convergence_check(Scene2D::box({0, 0}, {2, 2}), {0.2, 0.2}, {1.8, 1.1}, sch, 1e-6);
  EXPECT_EQ(c.converged_level, 0);
  for (double d : c.deviation) EXPECT_LE(d, 1e-12);
  auto s = length_convergence_check(slit_box(), {-1, 0}, {1, 0}, sch, 1e-6);
  ASSERT_GE(s.converged_level, 0);
  EXPECT_LE(s.converged_level, 6);
  EXPECT_LE(s.fragment_violation, 1e-6);
}
