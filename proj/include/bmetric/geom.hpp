#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace bmetric {

inline constexpr double kPi = std::numbers::pi;
// Opening angle of the wedge AOD.
inline constexpr double kWedge = kPi / 6.0;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Point2() = default;
  constexpr Point2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Point2 operator+(Point2 o) const { return {x + o.x, y + o.y}; }
  constexpr Point2 operator-(Point2 o) const { return {x - o.x, y - o.y}; }
  constexpr Point2 operator-() const { return {-x, -y}; }
  constexpr Point2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Point2 operator/(double s) const { return {x / s, y / s}; }
  Point2& operator+=(Point2 o) { x += o.x; y += o.y; return *this; }
  Point2& operator-=(Point2 o) { x -= o.x; y -= o.y; return *this; }
  constexpr bool operator==(const Point2&) const = default;
};

inline constexpr Point2 operator*(double s, Point2 p) { return p * s; }

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Point3() = default;
  constexpr Point3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  constexpr Point3 operator+(Point3 o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Point3 operator-(Point3 o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Point3 operator-() const { return {-x, -y, -z}; }
  constexpr Point3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Point3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Point3& operator+=(Point3 o) { x += o.x; y += o.y; z += o.z; return *this; }
  constexpr bool operator==(const Point3&) const = default;
};

inline constexpr Point3 operator*(double s, Point3 p) { return p * s; }

inline constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline constexpr double norm2(Point2 a) { return dot(a, a); }
inline double dist(Point2 a, Point2 b) { return norm(a - b); }
inline Point2 perp(Point2 a) { return {-a.y, a.x}; }
inline Point2 normalized(Point2 a) { return a / norm(a); }
inline double angle_of(Point2 a) { return std::atan2(a.y, a.x); }
inline Point2 unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

inline constexpr double dot(Point3 a, Point3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline constexpr Point3 cross(Point3 a, Point3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Point3 a) { return std::sqrt(dot(a, a)); }
inline double dist(Point3 a, Point3 b) { return norm(a - b); }
inline Point3 normalized(Point3 a) { return a / norm(a); }

inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }
inline bool is_finite(Point3 p) {
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

// Wraps an angle into [0, 2pi).
double wrap_angle(double a);

struct Segment2 {
  Point2 a;
  Point2 b;
  double length() const { return dist(a, b); }
  Point2 at(double t) const { return a + (b - a) * t; }
  bool operator==(const Segment2&) const = default;
};

// Orientation of c relative to the directed line a->b: +1 left, -1 right,
// 0 when the sine of the angle at a is within 1e-12.
int orient(Point2 a, Point2 b, Point2 c);

// Interiors cross in a single point (no endpoint of one lies on the other).
bool segments_cross_properly(Point2 p, Point2 q, Point2 a, Point2 b);
bool segments_intersect(Point2 p, Point2 q, Point2 a, Point2 b);

// Closed-segment membership with an absolute tolerance.
bool point_on_segment(Point2 p, Point2 a, Point2 b, double tol);

double point_segment_distance(Point2 p, Point2 a, Point2 b);
double segment_distance(Point2 p, Point2 q, Point2 a, Point2 b);
double point_segment_distance(Point3 p, Point3 a, Point3 b);

// Parameter t in [0,1] of the point of [a,b] closest to p.
double closest_param(Point2 p, Point2 a, Point2 b);
double closest_param(Point3 p, Point3 a, Point3 b);

// Polygon helpers (vertices in order, closed implicitly).
double polygon_area(const std::vector<Point2>& poly);
bool point_in_polygon(Point2 p, const std::vector<Point2>& poly, double tol);
double polygon_boundary_distance(Point2 p, const std::vector<Point2>& poly);

// Parameters t in [0,1] where segment p->q meets the circle |x - c| = r.
std::vector<double> segment_circle_params(Point2 p, Point2 q, Point2 c, double r);

// ---- Frames -----------------------------------------------------------

struct PolarPoint {
  double r = 0.0;
  double phi = 0.0;
};

// Polar frame of the plane AOD: origin O, zero ray along OA.
struct AngularFrame {
  Point2 origin{0.0, 0.0};
  Point2 zero_dir{1.0, 0.0};
  double phi_min = 0.0;
  double phi_max = kWedge;

  static AngularFrame triangle() { return {}; }
  bool in_range(double phi, double tol = 1e-12) const {
    return phi >= phi_min - tol && phi <= phi_max + tol;
  }
};

// phi is returned in (-pi, pi]. Throws DomainError at the origin.
PolarPoint to_polar(Point2 x, const AngularFrame& frame = AngularFrame::triangle());
Point2 from_polar(PolarPoint p, const AngularFrame& frame = AngularFrame::triangle());

inline Point2 point_A() { return {1.0, 0.0}; }
inline Point2 point_D() { return {std::cos(kWedge), std::sin(kWedge)}; }

// Circular cone with apex O around the axis OA. The plane AOD is spanned by
// axis and plane_dir.
struct ConeFrame {
  Point3 apex{0.0, 0.0, 0.0};
  Point3 axis{1.0, 0.0, 0.0};
  Point3 plane_dir{0.0, 1.0, 0.0};
  double half_angle = kWedge;

  static ConeFrame standard() { return {}; }
};

struct ConeCoords {
  double axial = 0.0;
  double radial = 0.0;
  double azimuth = 0.0;  // measured from plane_dir towards axis x plane_dir
};

ConeCoords cone_coords(Point3 x, const ConeFrame& frame = ConeFrame::standard());
Point3 from_cone_coords(ConeCoords c, const ConeFrame& frame = ConeFrame::standard());
// Angle between x - apex and the axis.
double axis_angle(Point3 x, const ConeFrame& frame = ConeFrame::standard());

// Rotation of x about the axis onto the half-plane of D in AOD, returned in
// plane coordinates (axial, radial). Throws DomainError at the apex or outside
// the closed cone.
Point2 proj_cone(Point3 x, const ConeFrame& frame = ConeFrame::standard());

// Lifts plane coordinates (axial, radial) to 3D at the given azimuth.
Point3 lift(Point2 p, double azimuth, const ConeFrame& frame = ConeFrame::standard());

// ---- Trapezium ----------------------------------------------------------

// Planar trapezium with parallel short sides orthogonal to OA.
//   x0 = inner end of the long side on the segment ray
//   y0 = outer end of that side (11 x0)
//   x1 = inner end of the other long side, y1 = 11 x1.
struct Trapezium {
  Point2 x0, y0, y1, x1;

  // Counter-clockwise order starting at x1: x1, y1, y0, x0.
  std::array<Point2, 4> ccw() const { return {x1, y1, y0, x0}; }
  Segment2 long_outer() const { return {x0, y0}; }   // lies on I^k_j
  Segment2 long_inner() const { return {x1, y1}; }
  Segment2 short_inner() const { return {x0, x1}; }
  Segment2 short_outer() const { return {y0, y1}; }
  std::array<Segment2, 4> sides() const {
    return {long_outer(), long_inner(), short_inner(), short_outer()};
  }
  // Interior angle at each vertex in ccw() order.
  std::array<double, 4> angles() const;
  bool contains(Point2 p, double tol = 0.0) const;
  bool short_sides_parallel(double tol = 1e-12) const;
};

}  // namespace bmetric
