#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bmetric/constructions.hpp"
#include "bmetric/metric.hpp"
#include "bmetric/scene3d.hpp"

namespace bmetric {

enum class Relation { AtLeast, AtMost };

// One measured quantity against its bound. The budgets widen the error bar of
// the measurement; slack is the tolerance granted by the criterion itself.
struct Comparison {
  std::string name;
  double measured = 0.0;
  Relation relation = Relation::AtLeast;
  double bound = 0.0;
  double slack = 0.0;
  double sampling_budget = 0.0;
  double oracle_budget = 0.0;

  double budget() const { return sampling_budget + oracle_budget; }
  bool pass() const;
};

struct CheckReport {
  std::string id;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<Comparison> comparisons;  // the first one is the headline
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::string> notes;
  // Control runs are expected to fail their headline comparison.
  bool control = false;
  double seconds = 0.0;

  const Comparison& headline() const { return comparisons.front(); }
  bool pass() const;
  void param(const std::string& k, const std::string& v) { parameters.emplace_back(k, v); }
  void param(const std::string& k, double v);
  void value(const std::string& k, double v) { values.emplace_back(k, v); }
  double value_of(const std::string& k) const;
};

std::string format_report(const CheckReport& r);

// ---- Triangle inequality -------------------------------------------------------

struct TriangleOptions {
  std::string scene_name = "scene";
  int triples = 100;
  int pool = 24;
  std::uint64_t seed = 7;
  double boundary_fraction = 0.5;
  double budget = 1e-6;
  OffsetSchedule schedule{};
  double tol = 1e-6;
};

// Random points of the closed free space, about boundary_fraction of them on
// obstacles, the ambient boundary or the disk.
std::vector<Point2> sample_scene_points(const Scene2D& scene, int count, double boundary_fraction,
                                        std::uint64_t seed);
CheckReport check_triangle_2d(const Scene2D& scene, const TriangleOptions& options = {});

// ---- Planar blocking --------------------------------------------------------

CheckReport check_passage_cost(int j0);
CheckReport check_family_blocking(int J, double eta = 0.05, bool control = false);
// Angular measure of the part of the path inside the layer
// 4 2^-j0 <= |x| <= 8 2^-j0.
double layer_sweep(const Polyline2& path, int j0);

CheckReport check_labyrinth(int j, int k, int coils, double eps,
                            int samples_per_coil = kDefaultSamplesPerCoil);
CheckReport check_labyrinth_level(int J, double margin = 0.01,
                                  int samples_per_coil = kDefaultSamplesPerCoil);

CheckReport check_trapezium_ratio(const Scene3D& scene, int trials = 10000, std::uint64_t seed = 11);

// ---- Spatial reduction ---------------------------------------------------------

struct ProjectionReduction {
  Polyline2 projected;
  Polyline2 reduced;
  double projected_length = 0.0;
  double reduced_length = 0.0;
  int rerouted = 0;                // trapezia whose fragment was replaced
  int opposite_long_sides = 0;     // fragments joining the two long sides
  double worst_fragment_ratio = 1.0;
  int crossings = 0;               // proper crossings of the result with the segments
  bool inside_triangle = true;
};

// Throws DomainError when the path meets a strip, leaves the truncated cone,
// passes through O, starts or ends inside a trapezium or, with require_short,
// is at least 10 long.
ProjectionReduction reduce_projection(const Polyline3& path, const Scene3D& scene,
                                      bool require_short = true);
CheckReport check_projection_reduction(const Polyline3& path, const Scene3D& scene);

// Short strip-avoiding paths in the cone: free wandering, radial dips into
// the gaps between coils, radial crossings and entries through the mouth of a
// labyrinth.
struct SyntheticPath {
  std::string kind;  // "axis", "mouth", "dip", "through-bottom", "through-top"
  Polyline3 path;
};
std::vector<SyntheticPath> synthetic_paths(const Scene3D& scene, int count, std::uint64_t seed);
CheckReport check_projection_suite(const Scene3D& scene, int count = 24, std::uint64_t seed = 5);

struct ViolationOptions {
  int J = 2;
  int restarts = 64;
  std::uint64_t seed = 1;
  int jobs = 1;
  double margin = 0.01;
  bool control = false;  // strips removed
};

CheckReport check_violation_3d(const ViolationOptions& options);
CheckReport check_violation_3d(const Scene3D& scene, const ViolationOptions& options);

// ---- Comb divergence ---------------------------------------------------------------

CheckReport check_comb_divergence(const std::vector<int>& Ns = {4, 8, 16, 32},
                                  double min_increment = 0.01);

// ---- Geodesics ------------------------------------------------------------

CheckReport check_geodesic(const std::string& scene_name, const Scene2D& scene, Point2 x, Point2 y,
                           double tol = 1e-6, const OffsetSchedule& schedule = {});
CheckReport check_length_convergence(const std::string& scene_name, const Scene2D& scene, Point2 x,
                                     Point2 y, const OffsetSchedule& schedule, double tol,
                                     int within_level);

// ---- Oracle cross-check ----------------------------------------------------------

// Grid length bound: grid <= kGridDistortion * vis + kGridSlackPerVertex * h * (bends + 1).
inline constexpr double kGridDistortion = 1.0824;
inline constexpr double kGridSlackPerVertex = 2.0 * 1.4142135623730951;

struct RandomSlitScene {
  Scene2D scene;
  Point2 a, b;
};
RandomSlitScene random_slit_scene(std::uint64_t seed);
CheckReport check_oracle_crosscheck(int scenes = 50, double h = 0.01, std::uint64_t seed = 3);

// ---- Suites -------------------------------------------------------------------------

struct SuiteOptions {
  int J = 2;
  std::uint64_t seed = 1;
  int jobs = 1;
  double tol = 1e-6;
  OffsetSchedule schedule{};
  int restarts = 64;
  bool controls = false;
};

std::vector<std::string> suite_names();
// Runs the checks of a suite ("thm1", "thm2", "thm3", "comb", "oracle", "all").
// Checks that throw are reported as failed with the message in the notes.
std::vector<CheckReport> run_suite(const std::string& name, const SuiteOptions& options);

}  // namespace bmetric
