#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bmetric/geom.hpp"
#include "bmetric/polyline.hpp"

namespace bmetric {

// Sampled spiral strip { lambda x(psi) : 1 <= lambda <= outer_scale } where
// x(psi) = (axial, rho(psi) cos psi, rho(psi) sin psi) and
// rho(psi) = start_radius - eps psi, psi in [0, 2 pi coils].
struct SpiralStrip {
  int level = 0;
  int index = 0;
  int coils = 0;
  int samples_per_coil = 64;
  double eps = 0.0;
  double axial = 0.0;
  double start_radius = 0.0;
  double outer_scale = 11.0;
  std::vector<Point3> inner;

  std::size_t sample_count() const { return inner.size(); }
  double psi(std::size_t i) const;
  Point3 outer(std::size_t i) const { return inner[i] * outer_scale; }
  // Sample i in the coordinates of the spiral's plane.
  Point2 plane_point(std::size_t i) const { return {inner[i].y, inner[i].z}; }
  std::vector<Point2> plane_points() const;
  // Angle to the axis: at the first sample and the smallest over the chords.
  double alpha_max() const;
  double alpha_min() const;
};

// Truncated configuration in space: strips, the cone over 4 triangle AOD and
// a ball of the given radius around O standing in for the finer levels.
class Scene3D {
 public:
  Scene3D(std::vector<SpiralStrip> strips, double ball_radius, double truncation = 4.0,
          ConeFrame frame = ConeFrame::standard());

  const std::vector<SpiralStrip>& strips() const { return strips_; }
  double ball_radius() const { return ball_radius_; }
  double truncation() const { return truncation_; }
  const ConeFrame& frame() const { return frame_; }
  Point3 point_a() const { return {1.0, 0.0, 0.0}; }
  Point3 point_d() const { return {std::cos(kWedge), std::sin(kWedge), 0.0}; }

  // Closed truncated cone K over truncation * triangle AOD.
  bool in_cone(Point3 p) const;
  bool in_ambient(Point3 p) const;
  bool hits_strips(Point3 p, Point3 q) const;
  // Straight motion p->q stays in the cone, outside the open ball and off
  // every strip. Touching a strip counts as a hit.
  bool segment_clear(Point3 p, Point3 q) const;
  bool path_clear(const Polyline3& path) const;

 private:
  struct StripIndex {
    std::vector<double> alpha;      // per sample, decreasing
    std::vector<double> alpha_low;  // per chord, lower bound of the angle
    std::vector<Point3> normal;     // per chord, inner[i] x inner[i+1]
    double r_min = 0.0;
    double r_max = 0.0;
    double band_lo = 0.0;
    double band_hi = 0.0;
  };
  bool hits_strip(const SpiralStrip& s, const StripIndex& idx, Point3 p, Point3 q, double a_lo,
                  double a_hi, double r_lo, double r_hi, double az0, double az_span,
                  bool az_all) const;

  std::vector<SpiralStrip> strips_;
  std::vector<StripIndex> index_;
  double ball_radius_;
  double truncation_;
  ConeFrame frame_;
};

struct SearchResult {
  Polyline3 best;
  double best_length = 0.0;
  std::vector<double> restart_lengths;  // +inf for restarts without a feasible start
  int feasible_restarts = 0;
};

struct SearchOptions {
  int restarts = 64;
  std::uint64_t seed = 1;
  int jobs = 1;
  int max_sweeps = 40;
};

// Feasible paths from a to b found by seeded local shortening; the best
// length is an upper bound for the intrinsic distance.
SearchResult path_upper_bound_3d(const Scene3D& scene, Point3 a, Point3 b,
                                 const SearchOptions& options = {});

}  // namespace bmetric
