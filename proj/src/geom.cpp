#include "bmetric/geom.hpp"

#include <algorithm>
#include <limits>

#include "bmetric/error.hpp"

namespace bmetric {

double wrap_angle(double a) {
  double w = std::fmod(a, 2.0 * kPi);
  if (w < 0.0) w += 2.0 * kPi;
  if (w >= 2.0 * kPi) w = 0.0;
  return w;
}

int orient(Point2 a, Point2 b, Point2 c) {
  Point2 u = b - a;
  Point2 v = c - a;
  double s = cross(u, v);
  double band = 1e-12 * norm(u) * norm(v);
  if (s > band) return 1;
  if (s < -band) return -1;
  return 0;
}

bool segments_cross_properly(Point2 p, Point2 q, Point2 a, Point2 b) {
  int o1 = orient(p, q, a);
  int o2 = orient(p, q, b);
  if (o1 * o2 >= 0) return false;
  int o3 = orient(a, b, p);
  int o4 = orient(a, b, q);
  return o3 * o4 < 0;
}

double closest_param(Point2 p, Point2 a, Point2 b) {
  Point2 d = b - a;
  double l2 = norm2(d);
  if (l2 == 0.0) return 0.0;
  return std::clamp(dot(p - a, d) / l2, 0.0, 1.0);
}

double closest_param(Point3 p, Point3 a, Point3 b) {
  Point3 d = b - a;
  double l2 = dot(d, d);
  if (l2 == 0.0) return 0.0;
  return std::clamp(dot(p - a, d) / l2, 0.0, 1.0);
}

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  return dist(p, a + (b - a) * closest_param(p, a, b));
}

double point_segment_distance(Point3 p, Point3 a, Point3 b) {
  return dist(p, a + (b - a) * closest_param(p, a, b));
}

bool point_on_segment(Point2 p, Point2 a, Point2 b, double tol) {
  return point_segment_distance(p, a, b) <= tol;
}

bool segments_intersect(Point2 p, Point2 q, Point2 a, Point2 b) {
  if (segments_cross_properly(p, q, a, b)) return true;
  double tol = 1e-12 * std::max({norm(q - p), norm(b - a), 1e-300});
  return point_on_segment(a, p, q, tol) || point_on_segment(b, p, q, tol) ||
         point_on_segment(p, a, b, tol) || point_on_segment(q, a, b, tol);
}

double segment_distance(Point2 p, Point2 q, Point2 a, Point2 b) {
  if (segments_cross_properly(p, q, a, b)) return 0.0;
  return std::min({point_segment_distance(p, a, b), point_segment_distance(q, a, b),
                   point_segment_distance(a, p, q), point_segment_distance(b, p, q)});
}

double polygon_area(const std::vector<Point2>& poly) {
  double s = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i)
    s += cross(poly[i], poly[(i + 1) % poly.size()]);
  return 0.5 * s;
}

double polygon_boundary_distance(Point2 p, const std::vector<Point2>& poly) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i)
    best = std::min(best, point_segment_distance(p, poly[i], poly[(i + 1) % poly.size()]));
  return best;
}

bool point_in_polygon(Point2 p, const std::vector<Point2>& poly, double tol) {
  if (polygon_boundary_distance(p, poly) <= tol) return true;
  bool inside = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Point2& a = poly[i];
    const Point2& b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      double xc = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < xc) inside = !inside;
    }
  }
  return inside;
}

std::vector<double> segment_circle_params(Point2 p, Point2 q, Point2 c, double r) {
  Point2 d = q - p;
  Point2 f = p - c;
  double a = norm2(d);
  double b = 2.0 * dot(d, f);
  double c0 = norm2(f) - r * r;
  std::vector<double> out;
  if (a == 0.0) return out;
  double disc = b * b - 4.0 * a * c0;
  if (disc < 0.0) return out;
  double s = std::sqrt(disc);
  // Numerically stable pair of roots.
  double qq = -0.5 * (b + std::copysign(s, b));
  double t1 = qq / a;
  double t2 = qq != 0.0 ? c0 / qq : t1;
  if (t1 > t2) std::swap(t1, t2);
  for (double t : {t1, t2})
    if (t >= 0.0 && t <= 1.0) out.push_back(t);
  return out;
}

PolarPoint to_polar(Point2 x, const AngularFrame& frame) {
  Point2 d = x - frame.origin;
  if (d.x == 0.0 && d.y == 0.0) throw DomainError("polar coordinates undefined at the origin");
  Point2 u = normalized(frame.zero_dir);
  return {norm(d), std::atan2(cross(u, d), dot(u, d))};
}

Point2 from_polar(PolarPoint p, const AngularFrame& frame) {
  Point2 u = normalized(frame.zero_dir);
  Point2 v = perp(u);
  return frame.origin + (u * std::cos(p.phi) + v * std::sin(p.phi)) * p.r;
}

ConeCoords cone_coords(Point3 x, const ConeFrame& frame) {
  Point3 d = x - frame.apex;
  double axial = dot(d, frame.axis);
  Point3 r = d - frame.axis * axial;
  Point3 w = cross(frame.axis, frame.plane_dir);
  return {axial, norm(r), std::atan2(dot(r, w), dot(r, frame.plane_dir))};
}

Point3 from_cone_coords(ConeCoords c, const ConeFrame& frame) {
  Point3 w = cross(frame.axis, frame.plane_dir);
  return frame.apex + frame.axis * c.axial +
         (frame.plane_dir * std::cos(c.azimuth) + w * std::sin(c.azimuth)) * c.radial;
}

double axis_angle(Point3 x, const ConeFrame& frame) {
  ConeCoords c = cone_coords(x, frame);
  return std::atan2(c.radial, c.axial);
}

Point2 proj_cone(Point3 x, const ConeFrame& frame) {
  if (x == frame.apex) throw DomainError("projection undefined at the cone apex");
  ConeCoords c = cone_coords(x, frame);
  if (std::atan2(c.radial, c.axial) > frame.half_angle + 1e-12)
    throw DomainError("point lies outside the cone");
  return {c.axial, c.radial};
}

Point3 lift(Point2 p, double azimuth, const ConeFrame& frame) {
  return from_cone_coords({p.x, p.y, azimuth}, frame);
}

std::array<double, 4> Trapezium::angles() const {
  auto v = ccw();
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) {
    Point2 prev = v[(i + 3) % 4] - v[i];
    Point2 next = v[(i + 1) % 4] - v[i];
    out[i] = std::atan2(std::abs(cross(prev, next)), dot(prev, next));
  }
  return out;
}

bool Trapezium::contains(Point2 p, double tol) const {
  auto v = ccw();
  for (int i = 0; i < 4; ++i) {
    Point2 e = v[(i + 1) % 4] - v[i];
    if (cross(e, p - v[i]) / norm(e) < -tol) return false;
  }
  return true;
}

bool Trapezium::short_sides_parallel(double tol) const {
  Point2 s0 = x1 - x0;
  Point2 s1 = y1 - y0;
  return std::abs(cross(s0, s1)) <= tol * norm(s0) * norm(s1);
}

}  // namespace bmetric
