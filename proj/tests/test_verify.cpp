#include <gtest/gtest.h>

#include <cmath>

#include "bmetric/constructions.hpp"
#include "bmetric/error.hpp"
#include "bmetric/verify.hpp"

using namespace bmetric;

TEST(Comparison, BudgetsWidenTheErrorBarAgainstTheMeasurement) {
  Comparison at_least{"x", 1.0, Relation::AtLeast, 1.0, 0.0, 0.0, 0.0};
  EXPECT_TRUE(at_least.pass());
  at_least.sampling_budget = 1e-9;
  EXPECT_FALSE(at_least.pass());
  at_least.slack = 1e-9;
  EXPECT_TRUE(at_least.pass());
  Comparison at_most{"y", 1.0, Relation::AtMost, 1.0, 0.0, 0.0, 1e-6};
  EXPECT_FALSE(at_most.pass());
  Comparison nan{"z", std::nan(""), Relation::AtMost, 1.0, 1.0, 0.0, 0.0};
  EXPECT_FALSE(nan.pass());
}

TEST(CheckReport, ControlsPassByFailingTheirHeadline) {
  CheckReport r;
  r.comparisons.push_back({"h", 0.5, Relation::AtLeast, 1.0, 0.0, 0.0, 0.0});
  r.comparisons.push_back({"side", 0.5, Relation::AtMost, 1.0, 0.0, 0.0, 0.0});
  EXPECT_FALSE(r.pass());
  r.control = true;
  EXPECT_TRUE(r.pass());
  r.comparisons[1].measured = 2.0;  // side conditions always have to hold
  EXPECT_FALSE(r.pass());
  EXPECT_FALSE(CheckReport{}.pass());
}

TEST(Triangle, SlitScenePassesAtTightBudget) {
  TriangleOptions o;
  o.scene_name = "slit";
  o.budget = 1e-9;
  CheckReport r = check_triangle_2d(Scene2D::box({-2, -2}, {2, 2}, {{{0, -1}, {0, 1}}}), o);
  EXPECT_TRUE(r.pass()) << format_report(r);
}

TEST(Triangle, ConvexSceneIsEuclidean) {
  TriangleOptions o;
  o.boundary_fraction = 0.0;
  CheckReport r = check_triangle_2d(Scene2D::box({0, 0}, {1, 1}), o);
  EXPECT_TRUE(r.pass());
  EXPECT_LE(r.value_of("worst_excess"), 1e-15);
}

TEST(Triangle, CombWithApexAsMiddlePoint) {
  // O at the apex of the comb, A and D on tooth tips.
  MetricEngine eng(comb_scene(16));
  const Point2 O{0, 0}, A{0.5, 0.5}, D{0.25, 0.25};
  double ad = eng.rho(A, D).value, ao = eng.rho(A, O).value, od = eng.rho(O, D).value;
  EXPECT_LE(ad, ao + od + 1e-6);
}

TEST(Triangle, CombPinchVertexIsOutsideTheManifoldCase) {
  // (1/17, 0) joins two free sides of the comb. Routing through it by
  // switching sides is shorter than any interior path, so such points are
  // never sampled as triangle vertices.
  Scene2D comb = comb_scene(16);
  const Point2 pinch{1.0 / 17.0, 0.0};
  ASSERT_EQ(comb.free_sectors(pinch).size(), 2u);
  MetricEngine eng(comb);
  const Point2 a{0.0063845854937125135, 0.012769170987425027}, d{0.5125551927611065, 0.77710548577058958};
  EXPECT_GT(eng.rho(a, d).value, eng.rho(a, pinch).value + eng.rho(pinch, d).value + 0.01);
  for (Point2 p : sample_scene_points(comb, 60, 0.8, 11)) EXPECT_EQ(comb.free_sectors(p).size(), 1u);
}

TEST(SamplePoints, BoundaryShareAndValidity) {
  auto rs = random_slit_scene(4);
  MetricEngine eng(rs.scene);
  auto pts = sample_scene_points(rs.scene, 40, 0.5, 2);
  ASSERT_EQ(pts.size(), 40u);
  int boundary = 0;
  for (auto p : pts) {
    EXPECT_TRUE(rs.scene.is_free(p) || rs.scene.on_obstacle(p));
    if (!eng.is_interior(p)) ++boundary;
  }
  EXPECT_GE(boundary, 10);
  EXPECT_EQ(sample_scene_points(rs.scene, 40, 0.5, 2), pts);
}

TEST(Passage, ComposedBoundValues) {
  CheckReport r1 = check_passage_cost(1);
  EXPECT_TRUE(r1.pass()) << format_report(r1);
  EXPECT_DOUBLE_EQ(r1.comparisons[1].measured, 6.0);
  EXPECT_GE(r1.headline().measured, 3.0 - 1e-6);
  CheckReport r2 = check_passage_cost(2);
  EXPECT_DOUBLE_EQ(r2.comparisons[1].measured, 12.0);
  EXPECT_GE(r2.headline().measured, 1.5 - 1e-6);
  EXPECT_THROW(check_passage_cost(0), ParameterError);
}

TEST(FamilyBlocking, LevelOneIsDisconnected) {
  // The disk seals the inner ends and the outer ends reach past the triangle.
  CheckReport r = check_family_blocking(1);
  EXPECT_TRUE(std::isinf(r.headline().measured));
  EXPECT_TRUE(r.pass()) << format_report(r);
  EXPECT_EQ(r.comparisons.size(), 1u);
  CheckReport c = check_family_blocking(1, 0.05, true);
  EXPECT_TRUE(c.control);
  EXPECT_TRUE(c.pass()) << format_report(c);
  EXPECT_NEAR(c.headline().measured, 4 * 2 * std::sin(kPi / 12) / 4, 1e-12);
}

TEST(LayerSweep, ArcOfKnownAngle) {
  // Path along the circle of radius 6 * 2^-1 = 3 sweeping 0.2 rad.
  std::vector<Point2> pts;
  for (int i = 0; i <= 100; ++i) pts.push_back(unit(0.3 * i / 100.0) * 3.0);
  EXPECT_NEAR(layer_sweep(Polyline2(pts), 1), 0.3, 1e-12);
  // Outside the layer nothing is counted.
  std::vector<Point2> far;
  for (int i = 0; i <= 10; ++i) far.push_back(unit(0.3 * i / 10.0) * 1.0);
  EXPECT_EQ(layer_sweep(Polyline2(far), 1), 0.0);
}

TEST(Labyrinth, SingleCoilIsAFailingControl) {
  SegmentFamily f(1);
  CheckReport r = check_labyrinth(1, 1, 1, choose_eps(f, 1, 1, 1));
  EXPECT_TRUE(r.control);
  EXPECT_FALSE(r.headline().pass());
  EXPECT_TRUE(r.pass());
}

TEST(Labyrinth, ChosenCoilsPassWithRefinementStability) {
  SegmentFamily f(1);
  int M = choose_M(f, 1, 2);
  CheckReport r = check_labyrinth(1, 2, M, choose_eps(f, 1, 2, M));
  EXPECT_TRUE(r.pass()) << format_report(r);
}

TEST(TrapeziumRatio, EquilateralVertexGivesTwo) {
  // Sides 1 and 1 at angle pi/3: third side by the law of cosines.
  const double third = std::sqrt(1 + 1 - 2 * std::cos(kPi / 3));
  EXPECT_NEAR(2.0 / third, 2.0, 1e-15);
  EXPECT_GT(std::sqrt(3.0) / 4.0, 0.4);
}

TEST(TrapeziumRatio, LevelOneStrips) {
  CheckReport r = check_trapezium_ratio(gen_strips(1), 10000, 3);
  EXPECT_TRUE(r.pass()) << format_report(r);
  EXPECT_LE(r.headline().measured, 2.5);
}

TEST(Reduction, PathMissingTrapeziaIsUnchanged) {
  Scene3D s = gen_strips(1);
  Polyline3 p({{1.0, 0.0, 0.0}, {1.5, 0.02, 0.01}, {2.0, 0.05, 0.0}});
  ProjectionReduction r = reduce_projection(p, s);
  EXPECT_EQ(r.rerouted, 0);
  EXPECT_NEAR(r.reduced_length, r.projected_length, 1e-15);
  EXPECT_EQ(r.crossings, 0);
  EXPECT_TRUE(r.inside_triangle);
}

TEST(Reduction, RejectsInvalidPaths) {
  Scene3D s = gen_strips(1);
  EXPECT_THROW(reduce_projection(Polyline3({{1, 0, 0}, {12, 0, 0}}), s), DomainError);
  EXPECT_THROW(reduce_projection(Polyline3({{1, 0, 0}, {0.1, 0, 0}}), s), DomainError);
}

TEST(Reduction, SyntheticPathsRespectFactor) {
  Scene3D s = gen_strips(2);
  auto paths = synthetic_paths(s, 10, 3);
  ASSERT_GE(paths.size(), 10u);
  int rerouted = 0;
  for (const auto& sp : paths) {
    ProjectionReduction r = reduce_projection(sp.path, s);
    EXPECT_LE(r.reduced_length, 2.5 * r.projected_length + 1e-6) << sp.kind;
    EXPECT_EQ(r.crossings, 0) << sp.kind;
    EXPECT_TRUE(r.inside_triangle) << sp.kind;
    rerouted += r.rerouted;
  }
  EXPECT_GT(rerouted, 0);
}

TEST(Violation, ControlIsChordAndSearchIsReproducible) {
  ViolationOptions o;
  o.J = 2;
  o.restarts = 4;
  o.control = true;
  CheckReport c = check_violation_3d(o);
  EXPECT_NEAR(c.headline().measured, 2 * std::sin(kPi / 12), 1e-12);
  ViolationOptions one = o;
  one.J = 1;
  one.control = false;
  CheckReport none = check_violation_3d(one);
  EXPECT_TRUE(std::isinf(none.headline().measured));
  EXPECT_FALSE(none.notes.empty());
  EXPECT_TRUE(c.pass());
  o.control = false;
  CheckReport a = check_violation_3d(o), b = check_violation_3d(o);
  EXPECT_EQ(a.headline().measured, b.headline().measured);
  EXPECT_TRUE(a.pass()) << format_report(a);
  o.J = 3;
  EXPECT_THROW(check_violation_3d(o), ParameterError);
}

TEST(Oracle, RandomSlitScenesAreValid) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto rs = random_slit_scene(seed);
    EXPECT_GE(rs.scene.obstacles().size(), 3u);
    EXPECT_LE(rs.scene.obstacles().size(), 6u);
    EXPECT_GE(dist(rs.a, rs.b), 0.3);
  }
  CheckReport r = check_oracle_crosscheck(5, 0.02, 1);
  EXPECT_TRUE(r.pass()) << format_report(r);
}

TEST(Suite, UnknownSuiteAndBadOptions) {
  SuiteOptions o;
  EXPECT_THROW(run_suite("nope", o), ParameterError);
  o.J = 3;
  EXPECT_THROW(run_suite("comb", o), ParameterError);
}
