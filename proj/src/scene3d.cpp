#include <algorithm>
#include <cmath>

#include "bmetric/error.hpp"
#include "bmetric/scene3d.hpp"

namespace bmetric {

namespace {

constexpr double kCoordTol = 1e-9;
constexpr double kAngleMargin = 1e-9;

// Smallest angle to the axis over the great arc between p and q.
double min_axis_angle(Point3 p, Point3 q, const ConeFrame& f) {
  double ap = axis_angle(p, f);
  double aq = axis_angle(q, f);
  double lo = std::min(ap, aq);
  Point3 pp = normalized(p - f.apex);
  Point3 qq = normalized(q - f.apex);
  Point3 m = cross(pp, qq);
  double mn = norm(m);
  if (mn < 1e-15) return lo;
  m = m / mn;
  Point3 c = f.axis - m * dot(f.axis, m);
  double cn = norm(c);
  if (cn < 1e-15) return 0.0;
  c = c / cn;
  if (dot(cross(pp, c), m) >= 0.0 && dot(cross(c, qq), m) >= 0.0)
    return std::min(lo, std::asin(std::min(1.0, std::abs(dot(f.axis, m)))));
  return lo;
}

// Segment p->q against the convex region a, b >= 0, 1 <= a + b <= s of the
// plane spanned by u, v (coordinates z = a u + b v), both given in (a, b).
bool clip_hits(Point2 p, Point2 q, double s) {
  // Half-planes n . x <= c.
  const Point2 ns[4] = {{-1, 0}, {0, -1}, {-1, -1}, {1, 1}};
  const double cs[4] = {kCoordTol, kCoordTol, -1.0 + kCoordTol, s + kCoordTol};
  double t0 = 0.0, t1 = 1.0;
  Point2 d = q - p;
  for (int k = 0; k < 4; ++k) {
    double num = cs[k] - dot(ns[k], p);
    double den = dot(ns[k], d);
    if (den == 0.0) {
      if (num < 0.0) return false;
    } else if (den > 0.0) {
      t1 = std::min(t1, num / den);
    } else {
      t0 = std::max(t0, num / den);
    }
    if (t0 > t1) return false;
  }
  return true;
}

bool quad_hit(Point3 x0, Point3 x1, Point3 n, Point3 p, Point3 q, double s) {
  double nn2 = dot(n, n);
  double nn = std::sqrt(nn2);
  double dp = dot(p, n) / nn;
  double dq = dot(q, n) / nn;
  double tol = 1e-12 * std::max(norm(p), norm(q));
  if ((dp > tol && dq > tol) || (dp < -tol && dq < -tol)) return false;
  auto coords = [&](Point3 z) {
    return Point2{dot(cross(z, x1), n) / nn2, dot(cross(x0, z), n) / nn2};
  };
  if (std::abs(dp) <= tol && std::abs(dq) <= tol) return clip_hits(coords(p), coords(q), s);
  double t = dp / (dp - dq);
  if (!std::isfinite(t)) t = 0.0;
  t = std::clamp(t, 0.0, 1.0);
  Point2 ab = coords(p + (q - p) * t);
  return ab.x >= -kCoordTol && ab.y >= -kCoordTol && ab.x + ab.y >= 1.0 - kCoordTol &&
         ab.x + ab.y <= s + kCoordTol;
}

}  // namespace

double SpiralStrip::psi(std::size_t i) const {
  return 2.0 * kPi * static_cast<double>(i) / samples_per_coil;
}

std::vector<Point2> SpiralStrip::plane_points() const {
  std::vector<Point2> out;
  out.reserve(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) out.push_back(plane_point(i));
  return out;
}

double SpiralStrip::alpha_max() const { return axis_angle(inner.front()); }

double SpiralStrip::alpha_min() const {
  double half = kPi / samples_per_coil;
  Point2 last = plane_point(inner.size() - 1);
  return std::atan2(norm(last) * std::cos(half), axial);
}

Scene3D::Scene3D(std::vector<SpiralStrip> strips, double ball_radius, double truncation,
                 ConeFrame frame)
    : strips_(std::move(strips)), ball_radius_(ball_radius), truncation_(truncation),
      frame_(frame) {
  if (!(ball_radius_ > 0.0)) throw ParameterError("ball radius must be positive");
  if (!(truncation_ > 0.0)) throw ParameterError("truncation must be positive");
  index_.reserve(strips_.size());
  for (const auto& s : strips_) {
    if (s.inner.size() < 2) throw ParameterError("strip needs at least two samples");
    StripIndex idx;
    const double ch = std::cos(kPi / s.samples_per_coil);
    idx.alpha.reserve(s.inner.size());
    idx.r_min = std::numeric_limits<double>::infinity();
    idx.r_max = 0.0;
    for (std::size_t i = 0; i < s.inner.size(); ++i) {
      idx.alpha.push_back(axis_angle(s.inner[i], frame_));
      double r = norm(s.inner[i] - frame_.apex);
      idx.r_max = std::max(idx.r_max, r * s.outer_scale);
    }
    for (std::size_t i = 0; i + 1 < s.inner.size(); ++i) {
      ConeCoords c0 = cone_coords(s.inner[i], frame_);
      ConeCoords c1 = cone_coords(s.inner[i + 1], frame_);
      double rho = std::min(c0.radial, c1.radial) * ch;
      double ax = std::min(c0.axial, c1.axial);
      idx.alpha_low.push_back(std::atan2(rho, std::max(c0.axial, c1.axial)));
      idx.normal.push_back(cross(s.inner[i] - frame_.apex, s.inner[i + 1] - frame_.apex));
      idx.r_min = std::min(idx.r_min, std::hypot(ax, rho));
    }
    // Keep the chord bounds monotone for the binary search.
    for (std::size_t i = 1; i < idx.alpha_low.size(); ++i)
      idx.alpha_low[i] = std::min(idx.alpha_low[i], idx.alpha_low[i - 1]);
    idx.band_hi = idx.alpha.front();
    idx.band_lo = idx.alpha_low.back();
    index_.push_back(std::move(idx));
  }
}

bool Scene3D::in_cone(Point3 p) const {
  ConeCoords c = cone_coords(p, frame_);
  if (c.axial < 0.0) return false;
  const double tol = 1e-12 * std::max(1.0, std::abs(c.axial));
  if (c.radial > c.axial * std::tan(frame_.half_angle) + tol) return false;
  const double h = 0.5 * frame_.half_angle;
  return c.axial * std::cos(h) + c.radial * std::sin(h) <= truncation_ * std::cos(h) + tol;
}

bool Scene3D::in_ambient(Point3 p) const {
  return in_cone(p) && norm(p - frame_.apex) >= ball_radius_ * (1.0 - 1e-12);
}

bool Scene3D::hits_strip(const SpiralStrip& s, const StripIndex& idx, Point3 p, Point3 q,
                         double a_lo, double a_hi, double r_lo, double r_hi, double az0,
                         double az_span, bool az_all) const {
  if (a_hi < idx.band_lo - kAngleMargin || a_lo > idx.band_hi + kAngleMargin) return false;
  if (r_hi < idx.r_min * (1.0 - 1e-9) || r_lo > idx.r_max * (1.0 + 1e-9)) return false;
  const std::size_t chords = idx.alpha_low.size();
  // First chord whose lowest angle is below a_hi.
  auto it1 = std::partition_point(idx.alpha_low.begin(), idx.alpha_low.end(),
                                  [&](double v) { return v > a_hi + kAngleMargin; });
  std::size_t i1 = static_cast<std::size_t>(it1 - idx.alpha_low.begin());
  // Chords after the last sample whose angle is above a_lo cannot be hit.
  auto it2 = std::partition_point(idx.alpha.begin(), idx.alpha.end(),
                                  [&](double v) { return v >= a_lo - kAngleMargin; });
  std::size_t i2 = static_cast<std::size_t>(it2 - idx.alpha.begin());  // exclusive
  i2 = std::min(i2, chords);
  if (i1 >= i2) return false;

  const int n = s.samples_per_coil;
  const double step = 2.0 * kPi / n;
  std::vector<char> mask(n, 1);
  if (!az_all) {
    for (int j = 0; j < n; ++j) {
      // Chord j spans [j step, (j+1) step]; compare circular intervals.
      double rel = wrap_angle(j * step - az0);
      bool overlap = rel <= az_span + kAngleMargin || rel + step >= 2.0 * kPi - kAngleMargin;
      mask[j] = overlap;
    }
  }
  for (std::size_t i = i1; i < i2; ++i) {
    if (!mask[i % n]) continue;
    if (quad_hit(s.inner[i] - frame_.apex, s.inner[i + 1] - frame_.apex, idx.normal[i],
                 p - frame_.apex, q - frame_.apex, s.outer_scale))
      return true;
  }
  return false;
}

bool Scene3D::hits_strips(Point3 p, Point3 q) const {
  if (strips_.empty()) return false;
  double a_hi = std::max(axis_angle(p, frame_), axis_angle(q, frame_));
  double a_lo = min_axis_angle(p, q, frame_);
  double r_lo = point_segment_distance(frame_.apex, p, q);
  double r_hi = std::max(norm(p - frame_.apex), norm(q - frame_.apex));
  ConeCoords cp = cone_coords(p, frame_);
  ConeCoords cq = cone_coords(q, frame_);
  Point2 pp{cp.radial * std::cos(cp.azimuth), cp.radial * std::sin(cp.azimuth)};
  Point2 qq{cq.radial * std::cos(cq.azimuth), cq.radial * std::sin(cq.azimuth)};
  bool az_all = point_segment_distance(Point2{}, pp, qq) <= 1e-9 * std::max(norm(pp), norm(qq)) ||
                norm(pp) == 0.0 || norm(qq) == 0.0;
  double az0 = 0.0, span = 0.0;
  if (!az_all) {
    double a0 = angle_of(pp);
    double sw = std::atan2(cross(pp, qq), dot(pp, qq));
    if (sw < 0.0) {
      a0 += sw;
      sw = -sw;
    }
    az0 = wrap_angle(a0);
    span = sw;
  }
  for (std::size_t k = 0; k < strips_.size(); ++k)
    if (hits_strip(strips_[k], index_[k], p, q, a_lo, a_hi, r_lo, r_hi, az0, span, az_all))
      return true;
  return false;
}

bool Scene3D::segment_clear(Point3 p, Point3 q) const {
  if (!in_ambient(p) || !in_ambient(q)) return false;
  if (point_segment_distance(frame_.apex, p, q) < ball_radius_ * (1.0 - 1e-9)) return false;
  return !hits_strips(p, q);
}

bool Scene3D::path_clear(const Polyline3& path) const {
  if (path.size() == 1) return in_ambient(path.front());
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (!segment_clear(path[i], path[i + 1])) return false;
  return true;
}

}  // namespace bmetric
