#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <queue>
#include <random>

#include "bmetric/constructions.hpp"
#include "bmetric/error.hpp"
#include "bmetric/shortest_path.hpp"
#include "bmetric/verify.hpp"

using namespace bmetric;

namespace {

Scene2D slit_box() { return Scene2D::box({-2, -2}, {2, 2}, {{{0, -1}, {0, 1}}}); }

// Independent oracle for a box with one vertical slit at x = 0: a path either
// sees the other point directly or bends once around an endpoint.
double slit_oracle(Point2 a, Point2 b) {
  if (!segments_intersect(a, b, {0, -1}, {0, 1})) return dist(a, b);
  return std::min(dist(a, {0, 1}) + dist({0, 1}, b), dist(a, {0, -1}) + dist({0, -1}, b));
}

// Dijkstra over a grid of spacing h on box [lo, hi], each node joined to every
// node within R cells along a primitive direction, plus a and b joined to
// nodes within R cells. Angular distortion is well under 1% for R = 4.
double dense_grid_oracle(const Scene2D& sc, Point2 a, Point2 b, Point2 lo, Point2 hi, double h, int R) {
  const int nx = static_cast<int>(std::ceil((hi.x - lo.x) / h)) + 1;
  const int ny = static_cast<int>(std::ceil((hi.y - lo.y) / h)) + 1;
  const int n = nx * ny;
  auto pos = [&](int i) { return Point2{lo.x + h * (i % nx), lo.y + h * (i / nx)}; };
  std::vector<std::pair<int, int>> dirs;
  for (int dx = -R; dx <= R; ++dx)
    for (int dy = -R; dy <= R; ++dy)
      if (std::gcd(std::abs(dx), std::abs(dy)) == 1) dirs.push_back({dx, dy});
  // Node n is a, node n + 1 is b.
  std::vector<double> d(n + 2, INFINITY);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  auto relax = [&](int v, double c) {
    if (c < d[v]) pq.push({d[v] = c, v});
  };
  relax(n, 0.0);
  while (!pq.empty()) {
    auto [c, u] = pq.top();
    pq.pop();
    if (c > d[u]) continue;
    if (u == n + 1) return c;
    Point2 p = u == n ? a : pos(u);
    if (sc.segment_free(p, b) && dist(p, b) <= R * h * 1.5) relax(n + 1, c + dist(p, b));
    if (u == n) {
      for (int i = 0; i < n; ++i) {
        Point2 q = pos(i);
        if (dist(a, q) <= R * h * 1.5 && sc.is_free(q) && sc.segment_free(a, q)) relax(i, dist(a, q));
      }
      continue;
    }
    const int ix = u % nx, iy = u / nx;
    for (auto [dx, dy] : dirs) {
      int jx = ix + dx, jy = iy + dy;
      if (jx < 0 || jy < 0 || jx >= nx || jy >= ny) continue;
      int v = jy * nx + jx;
      Point2 q = pos(v);
      if (sc.is_free(q) && sc.segment_free(p, q)) relax(v, c + dist(p, q));
    }
  }
  return INFINITY;
}

}  // namespace

TEST(Visibility, EmptySceneIsStraight) {
  auto p = shortest_path_2d(Scene2D::box({0, 0}, {1, 1}), {0, 0}, {1, 1});
  EXPECT_NEAR(p.length, std::sqrt(2.0), 1e-15);
  EXPECT_EQ(p.path.size(), 2u);
}

TEST(Visibility, SlitDetour) {
  auto p = shortest_path_2d(slit_box(), {-1, 0}, {1, 0});
  EXPECT_NEAR(p.length, 2 * std::sqrt(2.0), 1e-12);
  ASSERT_EQ(p.path.size(), 3u);
  EXPECT_NEAR(std::abs(p.path[1].y), 1.0, 1e-15);
  EXPECT_NEAR(p.path[1].x, 0.0, 1e-15);
}

TEST(Visibility, MatchesSlitOracleOnRandomPairs) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1.9, 1.9);
  VisibilityGraph g(slit_box());
  for (int i = 0; i < 300; ++i) {
    Point2 a{u(rng), u(rng)}, b{u(rng), u(rng)};
    if (std::abs(a.x) < 1e-3 || std::abs(b.x) < 1e-3) continue;
    EXPECT_NEAR(g.query(a, b).length, slit_oracle(a, b), 1e-12) << a.x << ',' << a.y << ' ' << b.x << ',' << b.y;
  }
}

TEST(Visibility, SymmetricAndObeysTriangleInequality) {
  auto rs = random_slit_scene(5);
  VisibilityGraph g(rs.scene);
  auto pts = sample_scene_points(rs.scene, 12, 0.0, 8);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) {
      double ij = g.query(pts[i], pts[j]).length;
      EXPECT_NEAR(ij, g.query(pts[j], pts[i]).length, 1e-12);
      EXPECT_GE(ij, dist(pts[i], pts[j]) - 1e-15);
      for (std::size_t k = 0; k < pts.size(); k += 3)
        EXPECT_LE(ij, g.query(pts[i], pts[k]).length + g.query(pts[k], pts[j]).length + 1e-12);
    }
}

TEST(Visibility, PathIsFreeAndHasReportedLength) {
  auto rs = random_slit_scene(11);
  auto p = shortest_path_2d(rs.scene, rs.a, rs.b);
  EXPECT_NEAR(p.path.length(), p.length, 1e-12);
  for (std::size_t i = 0; i + 1 < p.path.size(); ++i)
    for (const auto& s : rs.scene.obstacles())
      EXPECT_FALSE(segments_cross_properly(p.path[i], p.path[i + 1], s.a, s.b));
}

TEST(Visibility, InvalidAndUnreachableQueries) {
  EXPECT_THROW(shortest_path_2d(slit_box(), {5, 5}, {0.5, 0.5}), DomainError);
  // Wall across the box splits it in two.
  Scene2D split = Scene2D::box({0, 0}, {2, 1}, {{{1, 0}, {1, 1}}});
  EXPECT_THROW(shortest_path_2d(split, {0.5, 0.5}, {1.5, 0.5}), UnreachableError);
  EXPECT_FALSE(VisibilityGraph(split).try_query({0.5, 0.5}, {1.5, 0.5}).has_value());
}

TEST(Visibility, ArcAroundDisk) {
  // Unit disk at the origin; a and b on opposite sides.
  Scene2D s(std::vector<Point2>{{-3, -3}, {3, -3}, {3, 3}, {-3, 3}}, {}, Disk{{0, 0}, 1.0});
  auto p = shortest_path_2d(s, {-2, 0}, {2, 0});
  const double t = std::sqrt(3.0);  // tangent length from distance 2
  const double arc = kPi - 2 * std::acos(0.5);
  EXPECT_NEAR(p.length, 2 * t + arc, 1e-12);
  // The chain drawn for the arc circumscribes it: not shorter than the arc.
  EXPECT_GE(p.path.length(), p.length - 1e-12);
}

TEST(Grid, WithinOctileDistortion) {
  auto e = grid_path_2d(Scene2D::box({0, 0}, {1, 1}), {0.013, 0.021}, {0.987, 0.7}, 0.01);
  const double euclid = dist(Point2{0.013, 0.021}, Point2{0.987, 0.7});
  EXPECT_LE(e.length, euclid * 1.083 + 4 * 0.01);
  EXPECT_GE(e.length, euclid - 1e-12);
  auto s = grid_path_2d(slit_box(), {-1, 0}, {1, 0}, 0.01);
  EXPECT_LE(s.length, 2 * std::sqrt(2.0) * 1.083);
  EXPECT_GE(s.length, 2 * std::sqrt(2.0) - 1e-12);
}

TEST(Grid, HalvingSpacingAddsAtMostOneDiagonal) {
  auto rs = random_slit_scene(2);
  for (double h : {0.04, 0.02}) {
    double coarse = grid_path_2d(rs.scene, rs.a, rs.b, h).length;
    double fine = grid_path_2d(rs.scene, rs.a, rs.b, h / 2).length;
    EXPECT_LE(fine, coarse + std::sqrt(2.0) * h) << h;
  }
}

TEST(Grid, PassageSceneAgreesWithDenseGridWithinOnePercent) {
  // Three adjacent level-2 separators, as in the passage measurement.
  SegmentFamily f(2);
  std::vector<Segment2> segs{f.at(2, 10).seg, f.at(2, 11).seg, f.at(2, 12).seg};
  Scene2D sc = triangle_scene(4.0, segs);
  Point2 a = unit(0.5 * (f.at(2, 10).angle + f.at(2, 11).angle)) * 1.2;
  Point2 b = unit(0.5 * (f.at(2, 11).angle + f.at(2, 12).angle)) * 1.2;
  double vis = shortest_path_2d(sc, a, b).length;
  Point2 lo{std::min(a.x, b.x), std::min(a.y, b.y)}, hi{std::max(a.x, b.x), std::max(a.y, b.y)};
  for (const auto& s : segs)
    for (Point2 e : {s.a, s.b}) {
      lo = {std::min(lo.x, e.x), std::min(lo.y, e.y)};
      hi = {std::max(hi.x, e.x), std::max(hi.y, e.y)};
    }
  lo = lo - Point2{0.1, 0.1};
  hi = hi + Point2{0.1, 0.1};
  double dense = dense_grid_oracle(sc, a, b, lo, hi, 0.004, 4);
  EXPECT_GE(dense, vis - 1e-9);
  EXPECT_LE(dense, vis * 1.01);
}

TEST(LabyrinthBounds, CircleLikeCorridor) {
  // Tight spiral: portals are short, so the corridor is close to the polygon
  // through the outer portal ends s_n, s_{n+1}, ...
  SpiralStrip st = make_strip(1, 1, 6, 1e-4);
  auto pts = st.plane_points();
  auto b = labyrinth_bounds(pts, st.samples_per_coil);
  EXPECT_GT(b.lower, 0.0);
  EXPECT_LE(b.lower, b.upper + 1e-12);
  double chords = 0.0;
  for (std::size_t i = st.samples_per_coil + 1; i < pts.size(); ++i) chords += dist(pts[i - 1], pts[i]);
  EXPECT_LE(b.lower, chords + 1e-12);
  EXPECT_GE(b.lower, 0.99 * chords);
}
