#pragma once

#include <vector>

#include "bmetric/geom.hpp"
#include "bmetric/polyline.hpp"
#include "bmetric/scene3d.hpp"
#include "bmetric/shortest_path.hpp"

namespace bmetric {

// ---- Comb ----------------------------------------------------------------

struct CombTooth {
  int family = 0;  // 1..4
  int n = 0;
  Segment2 seg;
};

// Comb truncated after `levels` teeth per family. The segments bound a
// corridor that winds from (1,1) towards the origin; the truncated domain is
// closed off by the triangle with apex O.
struct CombDomain {
  int levels = 0;
  Point2 origin{0.0, 0.0};
  Segment2 fixed{{1.0, 2.0}, {1.0, 1.0}};
  std::vector<CombTooth> teeth;

  std::vector<Segment2> segments() const;
  // Counter-clockwise boundary of the truncated corridor.
  std::vector<Point2> polygon() const;
};

CombDomain gen_comb(int levels);
Scene2D comb_scene(int levels);

// ---- Segment family --------------------------------------------------------

struct FamilySegment {
  int level = 0;  // j >= 1
  int index = 0;  // 1 <= k <= floor((2 pi)^j)
  double angle = 0.0;
  Segment2 seg;   // [x, y] with x at radius 2^-j, y = 11 x
};

// floor((2 pi)^j).
int segments_at_level(int j);
double segment_angle(int j, int k);

class SegmentFamily {
 public:
  explicit SegmentFamily(int levels);
  int levels() const { return levels_; }
  const std::vector<FamilySegment>& segments() const { return items_; }
  std::size_t size() const { return items_.size(); }
  const FamilySegment& at(int j, int k) const;
  std::vector<Segment2> plain() const;

 private:
  int levels_;
  std::vector<FamilySegment> items_;
  std::vector<std::size_t> level_start_;
};

SegmentFamily gen_segment_family(int levels);

// 4 triangle AOD with the family segments as obstacles and, optionally, the
// disk of radius 2^-J around O that seals the inner ends of the finest level.
Scene2D family_scene(const SegmentFamily& family, bool with_disk = true);
Scene2D triangle_scene(double scale, std::vector<Segment2> obstacles = {},
                       std::optional<Disk> disk = std::nullopt);

// ---- Spirals and strips ---------------------------------------------------

inline constexpr int kDefaultSamplesPerCoil = 64;

// rho^k_j = |x^k_j| sin(phi^k_j).
double spiral_start_radius(int j, int k);
double spiral_axial(int j, int k);

// x(psi) for psi = 2 pi i / samples_per_coil, i = 0 .. coils * samples_per_coil.
Polyline3 gen_spiral(int j, int k, int coils, double eps,
                     int samples_per_coil = kDefaultSamplesPerCoil);
SpiralStrip make_strip(int j, int k, int coils, double eps,
                       int samples_per_coil = kDefaultSamplesPerCoil);

// Coil pitch rule rho / (16 pi M): the spiral shrinks by rho/8 over M coils.
double eps_cap(double rho, int coils);
// Angle between the ray of (j, k) and the nearest lower ray of the family
// (the axis for the lowest one).
double angular_gap_below(const SegmentFamily& family, int j, int k);
// Pitch for (j, k) with M coils: eps_cap, lowered when needed so the angle
// band swept by the strip stays within a quarter of the gap below its ray.
double choose_eps(const SegmentFamily& family, int j, int k, int coils);

struct LabyrinthCertificate {
  double lower = 0.0;        // portal bound, valid for the exact spiral
  double upper = 0.0;        // taut string through the sampled corridor
  double reference = 0.0;    // analytic length of the inner wall
  double chord_budget = 0.0; // (reference - lower) / reference
  std::size_t portals = 0;
};

LabyrinthCertificate labyrinth_certificate(const SpiralStrip& strip, bool with_upper = true);

// Smallest M whose certified corridor length is at least 10 (1 + margin).
int choose_M(const SegmentFamily& family, int j, int k, double margin = 0.01,
             int samples_per_coil = kDefaultSamplesPerCoil);

Scene3D gen_strips(int levels, double margin = 0.01,
                   int samples_per_coil = kDefaultSamplesPerCoil);

// Planar trapezium P^k_j = Proj of the strip (j, k).
Trapezium gen_trapezium(int j, int k, int coils, double eps);
Trapezium trapezium_of(const SpiralStrip& strip);

// ---- Truncated cone ----------------------------------------------------------

struct TruncatedCone {
  ConeFrame frame = ConeFrame::standard();
  double scale = 4.0;
  bool contains(Point3 p, double tol = 1e-12) const;
};

}  // namespace bmetric
