#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "bmetric/error.hpp"
#include "bmetric/scene3d.hpp"
#include "bmetric/shortest_path.hpp"

namespace bmetric {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double path_length(const std::vector<Point3>& v) {
  double s = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) s += dist(v[i - 1], v[i]);
  return s;
}

// Planar picture of the strips: each strip sits inside the trapezium swept by
// its angle band, slightly inflated.
Scene2D shadow_scene(const Scene3D& scene) {
  const double t = scene.truncation();
  std::vector<Point2> tri{{0.0, 0.0}, point_A() * t, point_D() * t};
  std::vector<Segment2> obs;
  for (const auto& s : scene.strips()) {
    double lo = s.alpha_min();
    double hi = s.alpha_max();
    double m = 0.05 * (hi - lo);
    double a0 = s.axial * (1.0 - 1e-3);
    double a1 = s.axial * s.outer_scale * (1.0 + 1e-3);
    Point2 p0{a0, a0 * std::tan(lo - m)};
    Point2 p1{a1, a1 * std::tan(lo - m)};
    Point2 p2{a1, a1 * std::tan(hi + m)};
    Point2 p3{a0, a0 * std::tan(hi + m)};
    obs.push_back({p0, p1});
    obs.push_back({p1, p2});
    obs.push_back({p2, p3});
    obs.push_back({p3, p0});
  }
  return Scene2D(std::move(tri), std::move(obs), Disk{{0.0, 0.0}, scene.ball_radius()});
}

std::vector<Point2> densify(const std::vector<Point2>& pts, double max_len) {
  std::vector<Point2> out{pts.front()};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    double l = dist(pts[i - 1], pts[i]);
    int k = std::max(1, static_cast<int>(std::ceil(l / max_len)));
    for (int j = 1; j <= k; ++j) out.push_back(pts[i - 1] + (pts[i] - pts[i - 1]) * (double(j) / k));
  }
  return out;
}

std::vector<Point3> lift_path(const std::vector<Point2>& pts, double base, double amp1,
                              double amp2, const ConeFrame& f) {
  std::vector<double> cum(pts.size(), 0.0);
  for (std::size_t i = 1; i < pts.size(); ++i) cum[i] = cum[i - 1] + dist(pts[i - 1], pts[i]);
  double total = std::max(cum.back(), 1e-300);
  std::vector<Point3> out;
  out.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double t = cum[i] / total;
    double th = base + amp1 * std::sin(kPi * t) + amp2 * std::sin(2.0 * kPi * t);
    out.push_back(lift(pts[i], th, f));
  }
  return out;
}

bool clear_path(const Scene3D& sc, const std::vector<Point3>& v) {
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (!sc.segment_clear(v[i], v[i + 1])) return false;
  return true;
}

void shorten(const Scene3D& sc, std::vector<Point3>& v, std::mt19937_64& rng, int max_sweeps) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  int stall = 0;
  for (int sweep = 0; sweep < max_sweeps && v.size() > 2; ++sweep) {
    double before = path_length(v);
    for (std::size_t i = 1; i + 1 < v.size();) {
      if (sc.segment_clear(v[i - 1], v[i + 1]))
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
      else
        ++i;
    }
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
      Point3 a = v[i - 1], b = v[i + 1];
      Point3 target = a + (b - a) * closest_param(v[i], a, b);
      for (double f : {1.0, 0.5, 0.25, 0.125, 0.0625}) {
        Point3 c = v[i] + (target - v[i]) * f;
        if (sc.segment_clear(a, c) && sc.segment_clear(c, b)) {
          v[i] = c;
          break;
        }
      }
    }
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
      Point3 a = v[i - 1], b = v[i + 1];
      double sigma = 0.1 * std::min(dist(a, v[i]), dist(v[i], b));
      Point3 c = v[i] + Point3{gauss(rng), gauss(rng), gauss(rng)} * sigma;
      if (dist(a, c) + dist(c, b) < dist(a, v[i]) + dist(v[i], b) && sc.segment_clear(a, c) &&
          sc.segment_clear(c, b))
        v[i] = c;
    }
    if (v.size() < 200) {
      // Midpoints give the next sweep room to bend the path further.
      double mean = path_length(v) / static_cast<double>(v.size() - 1);
      std::vector<Point3> out{v.front()};
      for (std::size_t i = 1; i < v.size(); ++i) {
        if (dist(v[i - 1], v[i]) > 2.0 * mean) out.push_back((v[i - 1] + v[i]) * 0.5);
        out.push_back(v[i]);
      }
      v.swap(out);
    }
    double after = path_length(v);
    stall = (before - after <= 1e-10 * after) ? stall + 1 : 0;
    if (stall >= 3) break;
  }
}

}  // namespace

SearchResult path_upper_bound_3d(const Scene3D& scene, Point3 a, Point3 b,
                                 const SearchOptions& options) {
  if (options.restarts < 1) throw ParameterError("need at least one restart");
  if (!scene.in_ambient(a) || !scene.in_ambient(b))
    throw DomainError("search endpoints must lie in the truncated cone outside the ball");
  const ConeFrame& f = scene.frame();
  const VisibilityGraph shadow(shadow_scene(scene));
  const Point2 a2 = proj_cone(a, f);
  const Point2 b2 = proj_cone(b, f);
  const double az_a = cone_coords(a, f).azimuth;
  const double az_b = cone_coords(b, f).azimuth;
  if (cone_coords(a, f).radial > 0.0 && cone_coords(b, f).radial > 0.0 &&
      std::abs(az_a - az_b) > 1e-12)
    throw DomainError("search endpoints must share an azimuth or lie on the axis");
  const double base_az = cone_coords(a, f).radial > 0.0 ? az_a : az_b;

  const int R = options.restarts;
  std::vector<std::vector<Point3>> paths(R);
  std::vector<double> lengths(R, kInf);

  auto run = [&](int r) {
    std::seed_seq seq{static_cast<std::uint64_t>(options.seed), static_cast<std::uint64_t>(r)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<Point2> plan;
    if (r == 0) {
      auto sp = shadow.try_query(a2, b2);
      if (!sp) return;
      plan = sp->path.vertices();
    } else {
      const double t = scene.truncation();
      for (int attempt = 0; attempt < 64 && plan.empty(); ++attempt) {
        double u = uni(rng), w = uni(rng);
        if (u + w > 1.0) {
          u = 1.0 - u;
          w = 1.0 - w;
        }
        Point2 p = point_A() * (t * u) + point_D() * (t * w);
        if (!shadow.scene().is_free(p)) continue;
        auto s1 = shadow.try_query(a2, p);
        if (!s1) continue;
        auto s2 = shadow.try_query(p, b2);
        if (!s2) continue;
        plan = s1->path.vertices();
        plan.insert(plan.end(), s2->path.vertices().begin() + 1, s2->path.vertices().end());
      }
      if (plan.empty()) return;
    }
    plan = densify(plan, 0.25);
    double amp1 = r == 0 ? 0.0 : (2.0 * uni(rng) - 1.0) * kPi / 3.0;
    double amp2 = r == 0 ? 0.0 : (2.0 * uni(rng) - 1.0) * kPi / 6.0;
    std::vector<Point3> v;
    for (int k = 0; k < 12; ++k) {
      v = lift_path(plan, base_az, amp1, amp2, f);
      v.front() = a;
      v.back() = b;
      if (clear_path(scene, v)) break;
      amp1 *= 0.5;
      amp2 *= 0.5;
      if (k == 10) amp1 = amp2 = 0.0;
      v.clear();
    }
    if (v.empty()) return;
    shorten(scene, v, rng, options.max_sweeps);
    if (!clear_path(scene, v)) return;
    lengths[r] = path_length(v);
    paths[r] = std::move(v);
  };

  const int jobs = std::max(1, std::min(options.jobs, R));
  if (jobs == 1) {
    for (int r = 0; r < R; ++r) run(r);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j)
      pool.emplace_back([&] {
        for (int r = next++; r < R; r = next++) run(r);
      });
    for (auto& th : pool) th.join();
  }

  SearchResult out;
  out.restart_lengths = lengths;
  int best = -1;
  for (int r = 0; r < R; ++r) {
    if (!std::isfinite(lengths[r])) continue;
    ++out.feasible_restarts;
    if (best < 0 || lengths[r] < lengths[best]) best = r;
  }
  if (best < 0) throw UnreachableError("no feasible path found in any restart");
  out.best = Polyline3::from_points(paths[best]);
  out.best_length = lengths[best];
  return out;
}

}  // namespace bmetric
