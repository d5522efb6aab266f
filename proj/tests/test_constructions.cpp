#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "bmetric/constructions.hpp"
#include "bmetric/error.hpp"

using namespace bmetric;

namespace {

bool same(Point2 a, Point2 b) { return dist(a, b) < 1e-14; }

bool share_endpoint(const Segment2& s, const Segment2& t) {
  return same(s.a, t.a) || same(s.a, t.b) || same(s.b, t.a) || same(s.b, t.b);
}

}  // namespace

TEST(Comb, FirstTeethMatchFormulas) {
  CombDomain c1 = gen_comb(1);
  ASSERT_EQ(c1.teeth.front().family, 1);
  EXPECT_TRUE(same(c1.teeth.front().seg.a, {1.0, 1.0}));
  EXPECT_TRUE(same(c1.teeth.front().seg.b, {0.5, 0.0}));
  CombDomain c2 = gen_comb(2);
  auto it = std::find_if(c2.teeth.begin(), c2.teeth.end(),
                         [](const CombTooth& t) { return t.family == 2 && t.n == 2; });
  ASSERT_NE(it, c2.teeth.end());
  EXPECT_TRUE(same(it->seg.a, {0.5, 0.5}));
  EXPECT_TRUE(same(it->seg.b, {0.5, 0.0}));
}

TEST(Comb, SegmentCountIsFourPerLevelPlusFixed) {
  for (int n : {1, 4, 8, 16}) EXPECT_EQ(gen_comb(n).segments().size(), static_cast<std::size_t>(4 * n + 1));
}

// The boundary is a chain: two segments meet at most in a shared endpoint.
TEST(Comb, SegmentsMeetOnlyAtSharedEndpoints) {
  for (int n : {1, 3, 8, 16}) {
    auto segs = gen_comb(n).segments();
    for (std::size_t i = 0; i < segs.size(); ++i)
      for (std::size_t j = i + 1; j < segs.size(); ++j) {
        const auto& s = segs[i];
        const auto& t = segs[j];
        EXPECT_FALSE(segments_cross_properly(s.a, s.b, t.a, t.b)) << n << ' ' << i << ' ' << j;
        if (segments_intersect(s.a, s.b, t.a, t.b)) EXPECT_TRUE(share_endpoint(s, t)) << n << ' ' << i << ' ' << j;
      }
  }
}

TEST(Comb, PolygonIsSimpleAndCounterClockwise) {
  for (int n : {2, 8, 32}) {
    auto poly = gen_comb(n).polygon();
    EXPECT_GT(polygon_area(poly), 0.0);
    const std::size_t m = poly.size();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 2; j < m; ++j) {
        if (i == 0 && j == m - 1) continue;
        EXPECT_FALSE(segments_intersect(poly[i], poly[(i + 1) % m], poly[j], poly[(j + 1) % m]))
            << n << ' ' << i << ' ' << j;
      }
  }
}

TEST(Family, SegmentCounts) {
  EXPECT_EQ(segments_at_level(1), 6);
  EXPECT_EQ(segments_at_level(2), 39);
  EXPECT_EQ(segments_at_level(3), 248);
  EXPECT_EQ(SegmentFamily(1).size(), 6u);
  EXPECT_EQ(SegmentFamily(2).size(), 45u);
  EXPECT_EQ(SegmentFamily(3).size(), 293u);
  EXPECT_THROW(SegmentFamily(0), ParameterError);
}

TEST(Family, FirstSegmentGeometry) {
  SegmentFamily f(1);
  const auto& s = f.at(1, 1);
  const double phi = kPi / 6.0 / (2.0 * kPi);
  EXPECT_NEAR(s.angle, phi, 1e-15);
  EXPECT_NEAR(norm(s.seg.a), 0.5, 1e-15);
  EXPECT_NEAR(norm(s.seg.b), 5.5, 1e-14);
  EXPECT_NEAR(angle_of(s.seg.b), phi, 1e-15);
}

TEST(Family, AnglesStayInsideWedge) {
  SegmentFamily f(3);
  for (const auto& s : f.segments()) {
    EXPECT_GT(s.angle, 0.0);
    EXPECT_LE(s.angle, kWedge * (1 + 1e-15));
  }
}

TEST(Spiral, StartsAtSegmentEndAndShrinksLinearly) {
  const int M = 5;
  const double eps = 1e-4;
  Polyline3 sp = gen_spiral(1, 2, M, eps);
  SegmentFamily f(1);
  Point2 x = f.at(1, 2).seg.a;
  EXPECT_NEAR(dist(sp.front(), Point3{x.x, x.y, 0.0}), 0.0, 1e-15);
  const Point3 last = sp.back();
  EXPECT_NEAR(std::hypot(last.y, last.z), spiral_start_radius(1, 2) - 2 * kPi * M * eps, 1e-14);
  double prev = 1e9;
  for (const auto& p : sp.vertices()) {
    double r = std::hypot(p.y, p.z);
    EXPECT_LT(r, prev);
    prev = r;
  }
}

TEST(Spiral, OneCoilChordSumIsCircumference) {
  Polyline3 sp = gen_spiral(1, 1, 1, 1e-12);
  const double rho = spiral_start_radius(1, 1);
  EXPECT_NEAR(sp.length() / (2 * kPi * rho), 1.0, 1e-3);
}

TEST(Pitch, CapFormula) {
  EXPECT_NEAR(eps_cap(1.0, 100), 1.0 / (1600.0 * kPi), 1e-18);
  // M coils of pitch 2 pi eps shrink the spiral by rho / 8.
  EXPECT_NEAR(2 * kPi * 100 * eps_cap(1.0, 100), 1.0 / 8.0, 1e-15);
  SegmentFamily f(2);
  for (const auto& s : f.segments())
    EXPECT_LE(choose_eps(f, s.level, s.index, 10), eps_cap(spiral_start_radius(s.level, s.index), 10));
}

TEST(Labyrinth, SingleCoilHasNoCorridor) {
  SegmentFamily f(1);
  auto c = labyrinth_certificate(make_strip(1, 1, 1, choose_eps(f, 1, 1, 1)));
  EXPECT_LT(c.lower, 10.0);
}

TEST(Labyrinth, ChosenCoilCountCertifiesAndIsMonotone) {
  SegmentFamily f(1);
  for (int k : {1, 3, 6}) {
    int M = choose_M(f, 1, k);
    auto c = labyrinth_certificate(make_strip(1, k, M, choose_eps(f, 1, k, M)), false);
    EXPECT_GE(c.lower, 10.0) << k;
    EXPECT_LE(c.chord_budget, 0.01);
    auto c1 = labyrinth_certificate(make_strip(1, k, M + 1, choose_eps(f, 1, k, M + 1)), false);
    EXPECT_GE(c1.lower, 10.0) << k;
    if (M > 2) {
      auto c0 = labyrinth_certificate(make_strip(1, k, M - 1, choose_eps(f, 1, k, M - 1)), false);
      EXPECT_LT(c0.lower, 10.0 * 1.01) << k;
    }
  }
}

TEST(Strips, LevelOneHasSixStrips) {
  Scene3D s = gen_strips(1);
  EXPECT_EQ(s.strips().size(), 6u);
  for (const auto& st : s.strips()) {
    double prev = 1e9;
    for (const auto& p : st.inner) {
      EXPECT_LT(norm(p), prev);
      prev = norm(p);
    }
  }
}

// A strip lies in { alpha_min <= angle to axis <= alpha_max, r_lo <= |x| <= r_hi };
// two strips are disjoint when these shells are.
TEST(Strips, LevelTwoStripsAreSeparated) {
  Scene3D s = gen_strips(2);
  ASSERT_EQ(s.strips().size(), 45u);
  struct Shell {
    double a0, a1, r0, r1;
  };
  std::vector<Shell> shells;
  for (const auto& st : s.strips()) {
    double r0 = 1e9, r1 = 0;
    for (const auto& p : st.inner) r0 = std::min(r0, norm(p)), r1 = std::max(r1, norm(p));
    // Chords cut inside the sampled circle; widen the radius range by the sagitta.
    double sag = 1.0 - std::cos(kPi / st.samples_per_coil);
    shells.push_back({st.alpha_min(), st.alpha_max(), r0 * (1 - sag), r1 * st.outer_scale});
  }
  for (std::size_t i = 0; i < shells.size(); ++i)
    for (std::size_t j = i + 1; j < shells.size(); ++j) {
      const auto& a = shells[i];
      const auto& b = shells[j];
      bool bands = a.a1 < b.a0 || b.a1 < a.a0;
      bool radii = a.r1 < b.r0 || b.r1 < a.r0;
      EXPECT_TRUE(bands || radii) << i << ' ' << j;
    }
}

TEST(Trapezium, ProjectionOfStripLiesInside) {
  Scene3D s = gen_strips(1);
  for (const auto& st : s.strips()) {
    Trapezium t = trapezium_of(st);
    for (std::size_t i = 0; i < st.inner.size(); i += 7) {
      EXPECT_TRUE(t.contains(proj_cone(st.inner[i]), 1e-9));
      EXPECT_TRUE(t.contains(proj_cone(st.outer(i)), 1e-9));
      Point3 mid = 0.5 * (st.inner[i] + st.outer(i));
      EXPECT_TRUE(t.contains(proj_cone(mid), 1e-9));
    }
  }
}

TEST(Trapezium, AnglesAndParallelSides) {
  Scene3D s = gen_strips(2);
  for (const auto& st : s.strips()) {
    Trapezium t = trapezium_of(st);
    EXPECT_TRUE(t.short_sides_parallel());
    // Short sides are orthogonal to OA.
    EXPECT_NEAR(t.x0.x - t.x1.x, 0.0, 1e-15);
    for (double a : t.angles())
      if (a < kPi / 2) EXPECT_GE(a, kPi / 3 - 1e-12);
  }
}
