#include <algorithm>
#include <limits>

#include "bmetric/error.hpp"
#include "bmetric/shortest_path.hpp"

namespace bmetric {

namespace {

constexpr double kAngleTol = 1e-12;

bool boxes_overlap(Point2 p, Point2 q, Point2 a, Point2 b, double tol) {
  return std::max(p.x, q.x) + tol >= std::min(a.x, b.x) &&
         std::max(a.x, b.x) + tol >= std::min(p.x, q.x) &&
         std::max(p.y, q.y) + tol >= std::min(a.y, b.y) &&
         std::max(a.y, b.y) + tol >= std::min(p.y, q.y);
}

}  // namespace

bool Sector::contains(Point2 dir) const {
  if (full()) return true;
  double a = wrap_angle(angle_of(dir) - start);
  return a <= width + kAngleTol || a >= 2.0 * kPi - kAngleTol;
}

Scene2D::Scene2D(std::vector<Point2> ambient, std::vector<Segment2> obstacles,
                 std::optional<Disk> disk)
    : ambient_(std::move(ambient)), obstacles_(std::move(obstacles)), disk_(disk) {
  if (ambient_.size() < 3) throw ParameterError("ambient polygon needs at least 3 vertices");
  if (polygon_area(ambient_) < 0.0) std::reverse(ambient_.begin(), ambient_.end());
  if (polygon_area(ambient_) <= 0.0) throw ParameterError("ambient polygon is degenerate");
  for (const auto& s : obstacles_) {
    if (!is_finite(s.a) || !is_finite(s.b)) throw ParameterError("obstacle is not finite");
    if (s.a == s.b) throw ParameterError("obstacle segment has zero length");
  }
  if (disk_ && !(disk_->radius > 0.0)) throw ParameterError("disk radius must be positive");

  lo_ = hi_ = ambient_.front();
  for (const auto& v : ambient_) {
    lo_ = {std::min(lo_.x, v.x), std::min(lo_.y, v.y)};
    hi_ = {std::max(hi_.x, v.x), std::max(hi_.y, v.y)};
  }
  scale_ = std::max(dist(lo_, hi_), 1e-300);

  if (disk_) {
    for (const auto& s : obstacles_)
      for (Point2 e : {s.a, s.b})
        if (dist(e, disk_->center) <= disk_->radius * (1.0 + 1e-9)) sealed_.push_back(e);
  }

  auto add_feature = [&](Point2 p) {
    if (!inside_ambient(p) || in_open_disk(p) || is_sealed(p)) return;
    for (const auto& f : features_)
      if (f == p) return;
    features_.push_back(p);
  };
  for (const auto& v : ambient_) add_feature(v);
  for (const auto& s : obstacles_) {
    add_feature(s.a);
    add_feature(s.b);
  }
  feature_sectors_.reserve(features_.size());
  for (const auto& f : features_) feature_sectors_.push_back(free_sectors(f));
}

Scene2D Scene2D::box(Point2 lo, Point2 hi, std::vector<Segment2> obstacles) {
  return Scene2D({lo, {hi.x, lo.y}, hi, {lo.x, hi.y}}, std::move(obstacles));
}

Point2 Scene2D::centroid() const {
  Point2 c;
  for (const auto& v : ambient_) c += v;
  return c / static_cast<double>(ambient_.size());
}

bool Scene2D::inside_ambient(Point2 p) const { return point_in_polygon(p, ambient_, eps()); }

bool Scene2D::in_open_disk(Point2 p) const {
  return disk_ && dist(p, disk_->center) < disk_->radius * (1.0 - 1e-12);
}

bool Scene2D::on_circle(Point2 p) const {
  return disk_ && std::abs(dist(p, disk_->center) - disk_->radius) <= 1e-12 * disk_->radius + eps();
}

bool Scene2D::is_sealed(Point2 p) const {
  for (const auto& s : sealed_)
    if (dist(s, p) <= eps()) return true;
  return false;
}

bool Scene2D::on_obstacle(Point2 p) const {
  for (const auto& s : obstacles_)
    if (point_on_segment(p, s.a, s.b, eps())) return true;
  return false;
}

bool Scene2D::on_obstacle_interior(Point2 p) const {
  for (const auto& s : obstacles_)
    if (point_on_segment(p, s.a, s.b, eps()) && dist(p, s.a) > eps() && dist(p, s.b) > eps())
      return true;
  return false;
}

bool Scene2D::is_free(Point2 p) const {
  return inside_ambient(p) && !in_open_disk(p) && !on_obstacle(p);
}

bool Scene2D::is_boundary(Point2 p) const {
  return on_obstacle(p) || on_circle(p) || polygon_boundary_distance(p, ambient_) <= eps();
}

std::vector<Sector> Scene2D::free_sectors(Point2 p) const {
  if (is_sealed(p) || in_open_disk(p)) return {};
  const double tol = eps();
  std::vector<double> rays;
  auto add_segment = [&](Point2 a, Point2 b) {
    if (dist(p, a) <= tol) {
      rays.push_back(angle_of(b - p));
    } else if (dist(p, b) <= tol) {
      rays.push_back(angle_of(a - p));
    } else if (point_on_segment(p, a, b, tol)) {
      rays.push_back(angle_of(a - p));
      rays.push_back(angle_of(b - p));
    }
  };
  for (const auto& s : obstacles_) add_segment(s.a, s.b);
  for (std::size_t i = 0; i < ambient_.size(); ++i)
    add_segment(ambient_[i], ambient_[(i + 1) % ambient_.size()]);
  if (on_circle(p)) {
    Point2 t = perp(p - disk_->center);
    rays.push_back(angle_of(t));
    rays.push_back(angle_of(-t));
  }
  if (rays.empty()) {
    if (inside_ambient(p)) return {Sector{}};
    return {};
  }
  for (double& r : rays) r = wrap_angle(r);
  std::sort(rays.begin(), rays.end());
  std::vector<double> uniq;
  for (double r : rays)
    if (uniq.empty() || r - uniq.back() > kAngleTol) uniq.push_back(r);
  if (uniq.size() > 1 && uniq.front() + 2.0 * kPi - uniq.back() <= kAngleTol) uniq.pop_back();

  std::vector<Sector> out;
  const double probe = 1e-7 * scale_;
  for (std::size_t i = 0; i < uniq.size(); ++i) {
    double start = uniq[i];
    double end = (i + 1 < uniq.size()) ? uniq[i + 1] : uniq[0] + 2.0 * kPi;
    double width = end - start;
    if (width <= kAngleTol) continue;
    // Probe a little inside the sector, scaled down for narrow sectors so the
    // probe stays close to the bisector.
    Point2 q = p + unit(start + 0.5 * width) * probe;
    if (!point_in_polygon(q, ambient_, 0.0) || in_open_disk(q) || on_obstacle(q)) continue;
    // A single ray leaves the full turn free apart from the ray itself.
    out.push_back({start, uniq.size() == 1 ? 2.0 * kPi - 1e-15 : width});
  }
  return out;
}

bool Scene2D::blocked_by_touch(Point2 p, Point2 q, std::vector<double>& ts) const {
  const double tol = eps();
  const Point2 d = q - p;
  const double len = norm(d);
  for (const auto& s : sealed_) {
    if (point_segment_distance(s, p, q) <= tol) return true;
  }
  for (std::size_t i = 0; i < features_.size(); ++i) {
    const Point2 w = features_[i];
    if (!boxes_overlap(p, q, w, w, tol)) continue;
    if (point_segment_distance(w, p, q) > tol) continue;
    double t = closest_param(w, p, q);
    if (t * len <= tol || (1.0 - t) * len <= tol) continue;
    bool through = false;
    for (const auto& sec : feature_sectors_[i])
      if (sec.contains(d) && sec.contains(-d)) {
        through = true;
        break;
      }
    if (!through) return true;
    ts.push_back(t);
  }
  return false;
}

bool Scene2D::segment_free(Point2 p, Point2 q) const {
  if (p == q) return true;
  const double tol = eps();
  for (const auto& s : obstacles_)
    if (boxes_overlap(p, q, s.a, s.b, tol) && segments_cross_properly(p, q, s.a, s.b)) return false;
  for (std::size_t i = 0; i < ambient_.size(); ++i) {
    Point2 a = ambient_[i];
    Point2 b = ambient_[(i + 1) % ambient_.size()];
    if (boxes_overlap(p, q, a, b, tol) && segments_cross_properly(p, q, a, b)) return false;
  }
  if (disk_ && point_segment_distance(disk_->center, p, q) < disk_->radius * (1.0 - 1e-9))
    return false;
  std::vector<double> ts{0.0, 1.0};
  if (blocked_by_touch(p, q, ts)) return false;
  std::sort(ts.begin(), ts.end());
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    if (ts[i + 1] - ts[i] <= 0.0) continue;
    Point2 mid = p + (q - p) * (0.5 * (ts[i] + ts[i + 1]));
    if (!inside_ambient(mid)) return false;
  }
  return true;
}

namespace {

// Which side of a move in direction dir the free sector lies on when dir runs
// along one of its edges: +1 left, -1 right, 0 when dir is inside (or runs
// along both edges, as at a slit tip).
int edge_side(const Sector& s, Point2 dir) {
  if (s.full()) return 0;
  double a = wrap_angle(angle_of(dir) - s.start);
  bool at_start = a <= kAngleTol || a >= 2.0 * kPi - kAngleTol;
  bool at_end = std::abs(a - s.width) <= kAngleTol;
  if (at_start == at_end) return 0;
  return at_start ? 1 : -1;
}

}  // namespace

bool Scene2D::edge_valid(Point2 p, const Sector& sp, Point2 q, const Sector& sq) const {
  if (p == q) return false;
  Point2 d = q - p;
  if (!sp.contains(d) || !sq.contains(-d)) return false;
  // Sliding along a boundary keeps the free side: left of d at p is right of
  // -d at q.
  int side_p = edge_side(sp, d), side_q = edge_side(sq, -d);
  if (side_p != 0 && side_q != 0 && side_p != -side_q) return false;
  return segment_free(p, q);
}

bool Scene2D::arc_free(double theta0, double width) const {
  if (!disk_) return false;
  const Point2 c = disk_->center;
  const double r = disk_->radius;
  const double atol = 1e-12;
  auto inside_arc = [&](Point2 x) {
    double a = wrap_angle(angle_of(x - c) - theta0);
    return a > atol && a < width - atol;
  };
  for (const auto& s : sealed_)
    if (std::abs(dist(s, c) - r) <= 1e-9 * r && inside_arc(s)) return false;
  auto blocks = [&](Point2 a, Point2 b) {
    for (double t : segment_circle_params(a, b, c, r))
      if (inside_arc(a + (b - a) * t)) return true;
    return false;
  };
  for (const auto& s : obstacles_)
    if (blocks(s.a, s.b)) return false;
  for (std::size_t i = 0; i < ambient_.size(); ++i)
    if (blocks(ambient_[i], ambient_[(i + 1) % ambient_.size()])) return false;
  return inside_ambient(c + unit(theta0 + 0.5 * width) * r);
}

}  // namespace bmetric
