#include "bmetric/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bmetric/error.hpp"

namespace bmetric {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::vector<double> OffsetSchedule::offsets() const {
  validate();
  std::vector<double> out;
  double d = initial;
  for (int i = 0; i < count; ++i, d *= factor) out.push_back(d);
  return out;
}

void OffsetSchedule::validate() const {
  if (!(initial > 0.0) || !std::isfinite(initial)) throw ParameterError("initial offset must be positive");
  if (!(factor > 0.0 && factor < 1.0)) throw ParameterError("offset factor must lie in (0, 1)");
  if (count < 2) throw ParameterError("offset schedule needs at least two levels");
}

OffsetSchedule OffsetSchedule::parse(const std::string& text) {
  OffsetSchedule s;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> s.initial >> c1 >> s.factor >> c2 >> s.count) || c1 != ',' || c2 != ',')
    throw ParameterError("offsets must be given as initial,factor,count");
  std::string rest;
  if (in >> rest) throw ParameterError("trailing characters in offset schedule");
  s.validate();
  return s;
}

std::string OffsetSchedule::str() const {
  std::ostringstream out;
  out.precision(17);
  out << initial << ',' << factor << ',' << count;
  return out.str();
}

Point2 Geodesic::at(double s) const {
  if (length <= 0.0) return path.front();
  return path.point_at(std::clamp(s, 0.0, length) * path.length() / length);
}

MetricEngine::MetricEngine(Scene2D scene, OffsetSchedule schedule, double tol)
    : graph_(std::move(scene)), schedule_(schedule), tol_(tol) {
  schedule_.validate();
  if (!(tol_ > 0.0)) throw ParameterError("tolerance must be positive");
}

bool MetricEngine::is_interior(Point2 x) const {
  auto s = scene().free_sectors(x);
  return s.size() == 1 && s.front().full();
}

std::optional<Point2> MetricEngine::sector_approach(Point2 x, const Sector& s, double delta) const {
  const Scene2D& sc = scene();
  double d = delta / std::sin(std::min(0.5 * s.width, 0.5 * kPi));
  Point2 dir = s.bisector();
  for (int i = 0; i < 60; ++i, d *= 0.5) {
    Point2 c = x + dir * d;
    if (c == x) break;
    if (is_interior(c) && sc.segment_free(x, c)) return c;
  }
  return std::nullopt;
}

Point2 MetricEngine::approach_point(Point2 x, double delta) const {
  const Scene2D& sc = scene();
  if (!is_finite(x)) throw DomainError("point is not finite");
  auto sectors = sc.free_sectors(x);
  if (sectors.empty()) throw DomainError("point is not in the closure of the free space");
  if (sectors.size() == 1 && sectors.front().full()) return x;
  const Point2 toward = sc.centroid() - x;
  const Sector* best = &sectors.front();
  for (const auto& s : sectors) {
    if (s.width > best->width + 1e-9) {
      best = &s;
    } else if (std::abs(s.width - best->width) <= 1e-9 &&
               dot(s.bisector(), toward) > dot(best->bisector(), toward)) {
      best = &s;
    }
  }
  if (auto c = sector_approach(x, *best, delta)) return *c;
  throw DomainError("no free approach point near the boundary point");
}

std::vector<Point2> MetricEngine::approach_points(Point2 x, double delta) const {
  if (!is_finite(x)) throw DomainError("point is not finite");
  auto sectors = scene().free_sectors(x);
  if (sectors.empty()) throw DomainError("point is not in the closure of the free space");
  if (sectors.size() == 1 && sectors.front().full()) return {x};
  std::vector<Point2> out;
  for (const auto& s : sectors)
    if (auto c = sector_approach(x, s, delta)) out.push_back(*c);
  if (out.empty()) throw DomainError("no free approach point near the boundary point");
  return out;
}

std::optional<ShortestPath> MetricEngine::level_path(Point2 x, Point2 y, double delta) const {
  return graph_.query_sets(approach_points(x, delta), approach_points(y, delta));
}

RhoEstimate MetricEngine::rho(Point2 x, Point2 y) const {
  RhoEstimate r;
  r.x = x;
  r.y = y;
  r.tolerance = tol_;
  if (x == y) {
    r.converged = true;
    r.lengths = {0.0};
    return r;
  }
  if (is_interior(x) && is_interior(y)) {
    auto p = graph_.try_query(x, y);
    r.lengths = {p ? p->length : kInf};
    r.value = r.lengths.front();
    r.converged = std::isfinite(r.value);
    return r;
  }
  r.offsets = schedule_.offsets();
  for (double d : r.offsets) {
    auto p = level_path(x, y, d);
    r.lengths.push_back(p ? p->length : kInf);
  }
  const std::size_t n = r.lengths.size();
  auto close = [&](std::size_t i) {
    double a = r.lengths[i - 1], b = r.lengths[i];
    return std::isfinite(a) && std::isfinite(b) &&
           std::abs(a - b) <= tol_ * std::max(1.0, std::abs(b));
  };
  std::size_t begin = n - 1;
  while (begin > 0 && close(begin)) --begin;
  r.tail_begin = begin;
  r.converged = begin < n - 1;
  // Level lengths converge to the limit; the finest level is the best estimate.
  r.best_level = n - 1;
  r.value = r.lengths[r.best_level];
  return r;
}

Geodesic MetricEngine::geodesic(Point2 x, Point2 y, int grid) const {
  if (grid < 1) throw ParameterError("geodesic check grid must be positive");
  RhoEstimate est = rho(x, y);
  if (!std::isfinite(est.value)) throw RefusalError("points are not connected (rho = +inf)");
  if (!est.converged) throw RefusalError("metric estimate did not converge; no geodesic");
  Geodesic g;
  g.estimate = est;
  g.length = est.value;
  if (x == y) {
    g.path = Polyline2(std::vector<Point2>{x});
    return g;
  }
  std::optional<ShortestPath> sp;
  if (est.offsets.empty())
    sp = graph_.try_query(x, y);
  else
    sp = level_path(x, y, est.offsets[est.best_level]);
  std::vector<Point2> pts = sp->path.vertices();
  pts.front() = x;
  pts.back() = y;
  g.path = Polyline2::from_points(pts);

  std::vector<Point2> samples;
  for (int i = 0; i <= grid; ++i) samples.push_back(g.at(g.length * i / grid));
  for (int i = 0; i <= grid; ++i)
    for (int j = i + 1; j <= grid; ++j) {
      double expect = g.length * (j - i) / grid;
      double got = samples[i] == samples[j] ? 0.0 : rho(samples[i], samples[j]).value;
      g.additivity_deviation = std::max(g.additivity_deviation, std::abs(got - expect));
      g.upper_violation = std::max(g.upper_violation, got - expect);
    }
  return g;
}

LengthConvergence MetricEngine::length_convergence_check(Point2 x, Point2 y, int grid) const {
  LengthConvergence out;
  Geodesic g = geodesic(x, y, grid);
  const double L = g.length;
  out.offsets = schedule_.offsets();
  for (double d : out.offsets) {
    auto p = level_path(x, y, d);
    out.lengths.push_back(p ? p->length : kInf);
  }
  // With proportional parametrization l(gamma_m|[s,t]) = (t - s) len_m / L,
  // so the largest deviation over s < t is attained on the whole interval.
  for (std::size_t m = 0; m < out.lengths.size(); ++m) {
    double dev = kInf;
    if (std::isfinite(out.lengths[m])) {
      dev = 0.0;
      for (int i = 0; i <= grid; ++i)
        for (int j = i + 1; j <= grid; ++j) {
          double span = L * (j - i) / grid;
          double frag = L > 0.0 ? span * out.lengths[m] / L : out.lengths[m];
          dev = std::max(dev, std::abs(frag - span));
        }
    }
    out.deviation.push_back(dev);
  }
  for (int m = static_cast<int>(out.deviation.size()) - 1; m >= 0; --m) {
    if (out.deviation[m] <= tol_)
      out.converged_level = m;
    else
      break;
  }
  const double scale = L > 0.0 ? g.path.length() / L : 1.0;
  for (int i = 0; i <= grid; ++i)
    for (int j = i + 1; j <= grid; ++j) {
      double s = L * i / grid, t = L * j / grid;
      double frag = (t - s) * scale;
      out.fragment_violation = std::max(out.fragment_violation, frag - (t - s));
    }
  return out;
}

RhoEstimate rho(const Scene2D& scene, Point2 x, Point2 y, const OffsetSchedule& schedule,
                double tol) {
  return MetricEngine(scene, schedule, tol).rho(x, y);
}

Geodesic geodesic(const Scene2D& scene, Point2 x, Point2 y, double tol,
                  const OffsetSchedule& schedule) {
  return MetricEngine(scene, schedule, tol).geodesic(x, y);
}

LengthConvergence length_convergence_check(const Scene2D& scene, Point2 x, Point2 y,
                                           const OffsetSchedule& schedule, double tol) {
  return MetricEngine(scene, schedule, tol).length_convergence_check(x, y);
}

}  // namespace bmetric
