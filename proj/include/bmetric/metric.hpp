#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bmetric/polyline.hpp"
#include "bmetric/shortest_path.hpp"

namespace bmetric {

// Geometric schedule of boundary offsets: initial, initial * factor, ...
struct OffsetSchedule {
  double initial = 1e-3;
  double factor = 0.1;
  int count = 8;

  std::vector<double> offsets() const;
  void validate() const;
  // "initial,factor,count"
  static OffsetSchedule parse(const std::string& text);
  std::string str() const;
};

struct RhoEstimate {
  Point2 x, y;
  std::vector<double> offsets;  // empty when no endpoint needed an offset
  std::vector<double> lengths;  // +inf for levels where no path exists
  double value = 0.0;
  bool converged = false;
  double tolerance = 0.0;
  std::size_t tail_begin = 0;   // first level of the converged tail
  std::size_t best_level = 0;   // level attaining value
};

struct Geodesic {
  Polyline2 path;  // runs from x to y
  double length = 0.0;
  RhoEstimate estimate;
  double additivity_deviation = 0.0;  // max |rho(g(s), g(t)) - (t - s)|
  double upper_violation = 0.0;       // max (rho(g(s), g(t)) - (t - s)), at least 0

  // Point at parameter s in [0, length].
  Point2 at(double s) const;
};

struct LengthConvergence {
  std::vector<double> offsets;
  std::vector<double> lengths;
  // max over s < t of |l(gamma_m|[s,t]) - (t - s)| with gamma_m parametrized
  // proportionally to arc length over [0, rho(x, y)].
  std::vector<double> deviation;
  int converged_level = -1;       // first level from which all deviations are within tol
  double fragment_violation = 0;  // max (l(geodesic|[s,t]) - (t - s)), at least 0
};

// Intrinsic metric of a planar scene. The constructor builds the visibility
// graph once; all queries reuse it.
class MetricEngine {
 public:
  explicit MetricEngine(Scene2D scene, OffsetSchedule schedule = {}, double tol = 1e-6);

  const Scene2D& scene() const { return graph_.scene(); }
  const VisibilityGraph& graph() const { return graph_; }
  const OffsetSchedule& schedule() const { return schedule_; }
  double tolerance() const { return tol_; }

  // True when x has a full neighbourhood of free space.
  bool is_interior(Point2 x) const;
  // Free point at distance about delta from boundary point x, moved along the
  // bisector of the widest free sector at x. Interior points are returned as is.
  Point2 approach_point(Point2 x, double delta) const;
  // One approach point per free sector at x. The liminf over all approaching
  // sequences is the minimum over these.
  std::vector<Point2> approach_points(Point2 x, double delta) const;

  RhoEstimate rho(Point2 x, Point2 y) const;
  // Shortest path between the approach point sets of level delta.
  std::optional<ShortestPath> level_path(Point2 x, Point2 y, double delta) const;
  Geodesic geodesic(Point2 x, Point2 y, int grid = 10) const;
  LengthConvergence length_convergence_check(Point2 x, Point2 y, int grid = 10) const;

 private:
  std::optional<Point2> sector_approach(Point2 x, const Sector& s, double delta) const;

  VisibilityGraph graph_;
  OffsetSchedule schedule_;
  double tol_;
};

RhoEstimate rho(const Scene2D& scene, Point2 x, Point2 y, const OffsetSchedule& schedule = {},
                double tol = 1e-6);
Geodesic geodesic(const Scene2D& scene, Point2 x, Point2 y, double tol = 1e-6,
                  const OffsetSchedule& schedule = {});
LengthConvergence length_convergence_check(const Scene2D& scene, Point2 x, Point2 y,
                                           const OffsetSchedule& schedule, double tol);

}  // namespace bmetric
