#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "bmetric/error.hpp"
#include "bmetric/verify.hpp"

namespace bmetric {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

using Poly = std::vector<Point2>;

// Sutherland-Hodgman clip of a convex counter-clockwise polygon.
Poly clip_convex(const Poly& subject, const Poly& clip) {
  Poly out = subject;
  for (std::size_t e = 0; e < clip.size() && !out.empty(); ++e) {
    Point2 a = clip[e], b = clip[(e + 1) % clip.size()];
    auto side = [&](Point2 p) { return cross(b - a, p - a); };
    Poly in = std::move(out);
    out.clear();
    for (std::size_t i = 0; i < in.size(); ++i) {
      Point2 p = in[i], q = in[(i + 1) % in.size()];
      double sp = side(p), sq = side(q);
      if (sp >= 0.0) out.push_back(p);
      if ((sp >= 0.0) != (sq >= 0.0)) out.push_back(p + (q - p) * (sp / (sp - sq)));
    }
  }
  Poly dedup;
  for (auto p : out)
    if (dedup.empty() || dist(dedup.back(), p) > 1e-15) dedup.push_back(p);
  while (dedup.size() > 1 && dist(dedup.front(), dedup.back()) <= 1e-15) dedup.pop_back();
  return dedup;
}

// Parameter range of segment p->q inside a convex ccw polygon.
bool clip_segment(const Poly& poly, Point2 p, Point2 q, double& t0, double& t1) {
  t0 = 0.0;
  t1 = 1.0;
  Point2 d = q - p;
  for (std::size_t e = 0; e < poly.size(); ++e) {
    Point2 a = poly[e], b = poly[(e + 1) % poly.size()];
    Point2 ed = b - a;
    double num = cross(ed, p - a);  // >= 0 inside
    double den = cross(ed, d);
    const double tol = 1e-13 * (norm(ed) + norm(p - a));
    if (den == 0.0) {
      if (num < -tol) return false;
      continue;
    }
    double t = -(num + tol) / den;
    if (den > 0.0)
      t0 = std::max(t0, t);
    else
      t1 = std::min(t1, t);
    if (t0 > t1) return false;
  }
  return true;
}

bool strictly_inside(const Poly& poly, Point2 p) {
  for (std::size_t e = 0; e < poly.size(); ++e) {
    Point2 a = poly[e], b = poly[(e + 1) % poly.size()];
    if (cross(b - a, p - a) <= 1e-12 * norm(b - a)) return false;
  }
  return true;
}

double perimeter_position(const Poly& poly, Point2 p, std::size_t& edge) {
  double best = kInf, pos = 0.0, acc = 0.0;
  for (std::size_t e = 0; e < poly.size(); ++e) {
    Point2 a = poly[e], b = poly[(e + 1) % poly.size()];
    double d = point_segment_distance(p, a, b);
    if (d < best) {
      best = d;
      edge = e;
      pos = acc + dist(a, b) * closest_param(p, a, b);
    }
    acc += dist(a, b);
  }
  return pos;
}

// Boundary route from e to x: the shorter of the two ways round.
std::vector<Point2> perimeter_route(const Poly& poly, Point2 e, Point2 x) {
  const std::size_t n = poly.size();
  std::vector<double> cum(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) cum[i] = cum[i - 1] + dist(poly[i - 1], poly[i]);
  const double total = cum[n - 1] + dist(poly[n - 1], poly[0]);
  std::size_t edge = 0;
  const double se = perimeter_position(poly, e, edge);
  const double sx = perimeter_position(poly, x, edge);
  auto wrap = [&](double d) { return d < 0.0 ? d + total : d; };
  const double ccw = wrap(sx - se);
  const bool forward = ccw <= total - ccw;
  const double span = forward ? ccw : total - ccw;
  std::vector<std::pair<double, std::size_t>> corners;
  for (std::size_t k = 0; k < n; ++k) {
    double off = forward ? wrap(cum[k] - se) : wrap(se - cum[k]);
    if (off > 0.0 && off < span) corners.emplace_back(off, k);
  }
  std::sort(corners.begin(), corners.end());
  std::vector<Point2> route{e};
  for (auto [off, k] : corners) route.push_back(poly[k]);
  route.push_back(x);
  return route;
}

double chain_length(const std::vector<Point2>& v) {
  double s = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) s += dist(v[i - 1], v[i]);
  return s;
}

Poly big_triangle(const Scene3D& sc) {
  const double t = sc.truncation();
  return {{0.0, 0.0}, point_A() * t, point_D() * t};
}

}  // namespace

ProjectionReduction reduce_projection(const Polyline3& path, const Scene3D& scene,
                                      bool require_short) {
  if (path.size() < 2) throw DomainError("path needs at least two vertices");
  if (require_short && path.length() >= 10.0) throw DomainError("path is at least 10 long");
  if (!scene.path_clear(path))
    throw DomainError("path leaves the truncated cone, enters the ball or meets a strip");
  const ConeFrame& f = scene.frame();
  const Poly tri = big_triangle(scene);

  std::vector<Point2> pts;
  const double step = 1e-3;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    Point3 a = path[i], b = path[i + 1];
    int k = std::max(1, static_cast<int>(std::ceil(dist(a, b) / step)));
    for (int j = 0; j < k; ++j) pts.push_back(proj_cone(a + (b - a) * (double(j) / k), f));
  }
  pts.push_back(proj_cone(path.back(), f));

  ProjectionReduction out;
  out.projected = Polyline2::from_points(pts);
  out.projected_length = out.projected.length();
  pts = out.projected.vertices();

  std::vector<Poly> quads;
  std::vector<Trapezium> traps;
  for (const auto& s : scene.strips()) {
    Trapezium t = trapezium_of(s);
    auto c = t.ccw();
    Poly q = clip_convex(Poly(c.begin(), c.end()), tri);
    if (q.size() < 3) continue;
    quads.push_back(std::move(q));
    traps.push_back(t);
  }

  for (std::size_t qi = 0; qi < quads.size(); ++qi) {
    const Poly& q = quads[qi];
    if (pts.size() < 2) break;
    if (strictly_inside(q, pts.front()) || strictly_inside(q, pts.back()))
      throw DomainError("path starts or ends inside a trapezium");
    std::size_t first = 0, last = 0;
    double t_first = 0.0, t_last = 0.0;
    bool found = false;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      double t0, t1;
      if (!clip_segment(q, pts[i], pts[i + 1], t0, t1)) continue;
      if (!found) {
        found = true;
        first = i;
        t_first = t0;
      }
      last = i;
      t_last = t1;
    }
    if (!found) continue;
    Point2 e = pts[first] + (pts[first + 1] - pts[first]) * t_first;
    Point2 x = pts[last] + (pts[last + 1] - pts[last]) * t_last;
    std::vector<Point2> frag{e};
    for (std::size_t i = first + 1; i <= last; ++i) frag.push_back(pts[i]);
    frag.push_back(x);
    double frag_len = chain_length(frag);
    if (frag_len <= 0.0) continue;  // touches the trapezium in a single point
    auto route = perimeter_route(q, e, x);
    double route_len = chain_length(route);
    out.worst_fragment_ratio = std::max(out.worst_fragment_ratio, route_len / frag_len);
    ++out.rerouted;

    // A fragment from one long side to the other that never meets a short
    // side would have to run through the whole labyrinth.
    const Trapezium& tr = traps[qi];
    auto on = [&](Point2 p, Segment2 s) { return point_segment_distance(p, s.a, s.b) <= 1e-9; };
    bool long_to_long = (on(e, tr.long_outer()) && on(x, tr.long_inner())) ||
                        (on(e, tr.long_inner()) && on(x, tr.long_outer()));
    if (long_to_long) {
      bool meets_short = false;
      for (std::size_t i = 0; i + 1 < frag.size() && !meets_short; ++i)
        for (auto s : {tr.short_inner(), tr.short_outer()})
          if (segments_intersect(frag[i], frag[i + 1], s.a, s.b)) meets_short = true;
      if (!meets_short) ++out.opposite_long_sides;
    }

    std::vector<Point2> next(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(first) + 1);
    next.insert(next.end(), route.begin(), route.end());
    next.insert(next.end(), pts.begin() + static_cast<std::ptrdiff_t>(last) + 1, pts.end());
    pts = Polyline2::from_points(next).vertices();
  }

  out.reduced = Polyline2::from_points(pts);
  out.reduced_length = out.reduced.length();
  for (const auto& t : traps) {
    Segment2 seg = t.long_outer();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
      if (segments_cross_properly(pts[i], pts[i + 1], seg.a, seg.b)) ++out.crossings;
  }
  for (auto p : pts)
    if (!point_in_polygon(p, tri, 1e-9)) out.inside_triangle = false;
  return out;
}

CheckReport check_projection_reduction(const Polyline3& path, const Scene3D& scene) {
  auto t0 = std::chrono::steady_clock::now();
  CheckReport r;
  r.id = "projection-reduction";
  ProjectionReduction red = reduce_projection(path, scene);
  r.comparisons.push_back({"reduced length", red.reduced_length, Relation::AtMost,
                           2.5 * red.projected_length, 1e-6, 0.0, 0.0});
  r.comparisons.push_back({"crossings with segments", static_cast<double>(red.crossings),
                           Relation::AtMost, 0.0, 0.0, 0.0, 0.0});
  r.comparisons.push_back({"inside 4 AOD", red.inside_triangle ? 1.0 : 0.0, Relation::AtLeast, 1.0,
                           0.0, 0.0, 0.0});
  r.value("path_length", path.length());
  r.value("projected_length", red.projected_length);
  r.value("reduced_length", red.reduced_length);
  r.value("rerouted", red.rerouted);
  r.value("worst_fragment_ratio", red.worst_fragment_ratio);
  r.value("long_to_long", red.opposite_long_sides);
  r.seconds = seconds_since(t0);
  return r;
}

// ---- Synthetic paths -------------------------------------------------------------

namespace {

struct StripView {
  const SpiralStrip* s;
  double phi;       // ray angle of the segment
  double alpha_in;  // angle of the inner long side of the trapezium
  double gap_up;    // free angle above the ray
  double gap_down;  // free angle below the trapezium
  double r0;        // |x^k_j|
};

double sample_angle(const SpiralStrip& s, std::size_t i) { return axis_angle(s.inner[i]); }

std::vector<StripView> strip_views(const Scene3D& sc) {
  std::vector<StripView> out;
  const auto& st = sc.strips();
  for (const auto& s : st) {
    StripView v{&s, s.alpha_max(), sample_angle(s, s.inner.size() - 1), kWedge - s.alpha_max(),
                0.0, norm(s.inner.front())};
    v.gap_down = s.alpha_min();
    const double lo = v.r0, hi = v.r0 * s.outer_scale;
    for (const auto& o : st) {
      if (&o == &s) continue;
      double olo = norm(o.inner.back()), ohi = norm(o.inner.front()) * o.outer_scale;
      if (std::max(lo, olo) >= std::min(hi, ohi)) continue;
      if (o.alpha_min() > v.phi) v.gap_up = std::min(v.gap_up, o.alpha_min() - v.phi);
      if (o.alpha_max() < s.alpha_min()) v.gap_down = std::min(v.gap_down, s.alpha_min() - o.alpha_max());
    }
    out.push_back(v);
  }
  return out;
}

Point3 at(double R, double alpha, double azimuth) {
  return lift({R * std::cos(alpha), R * std::sin(alpha)}, azimuth);
}

}  // namespace

std::vector<SyntheticPath> synthetic_paths(const Scene3D& scene, int count, std::uint64_t seed) {
  if (count < 1) throw ParameterError("need at least one synthetic path");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto views = strip_views(scene);
  const Poly tri = big_triangle(scene);
  std::vector<Poly> quads;
  for (const auto& s : scene.strips()) {
    auto c = trapezium_of(s).ccw();
    quads.push_back(clip_convex(Poly(c.begin(), c.end()), tri));
  }
  double lowest = kWedge;
  for (const auto& s : scene.strips()) lowest = std::min(lowest, s.alpha_min());
  const double ball = scene.ball_radius();
  const char* kinds[] = {"mouth", "dip", "through-bottom", "through-top", "axis"};

  std::vector<SyntheticPath> out;
  for (int attempt = 0; attempt < 40 * count && static_cast<int>(out.size()) < count; ++attempt) {
    std::string kind = kinds[out.size() % 5];
    std::vector<Point3> v;
    if (kind == "axis" || views.empty()) {
      kind = "axis";
      int n = 3 + static_cast<int>(u01(rng) * 3);
      for (int i = 0; i < n; ++i)
        v.push_back(at(0.4 + 2.6 * u01(rng), 0.5 * lowest * u01(rng), 2.0 * kPi * u01(rng)));
    } else {
      const StripView& sv = views[static_cast<std::size_t>(u01(rng) * views.size())];
      const SpiralStrip& s = *sv.s;
      const std::size_t n = static_cast<std::size_t>(s.samples_per_coil);
      const double lam = 2.0 + 4.0 * u01(rng);
      const double lam2 = 2.0 + 4.0 * u01(rng);
      const double up = sv.phi + 0.25 * sv.gap_up;
      const double down = sv.alpha_in - 0.25 * sv.gap_down;
      // Inner short side: axial coordinate below that of x^k_j.
      auto short_radius = [&](double alpha) {
        return std::max(ball * 1.05, 0.8 * s.axial / std::cos(alpha));
      };
      if (kind == "mouth") {
        if (s.coils < 3) continue;
        std::size_t depth = 2 + static_cast<std::size_t>(u01(rng) * 6);
        double az = 2.0 * kPi * static_cast<double>(n - 1) / static_cast<double>(n);
        double a_prev = sample_angle(s, n - 1);
        v.push_back(at(lam * sv.r0, up, az));
        v.push_back(at(lam * sv.r0, 0.5 * (a_prev + sv.phi), az));
        for (std::size_t i = 0; i <= depth; ++i) v.push_back((s.inner[i] + s.inner[i + n]) * (0.5 * lam));
        double lam_back = lam * 1.05;
        for (std::size_t i = depth + 1; i-- > 0;)
          v.push_back((s.inner[i] + s.inner[i + n]) * (0.5 * lam_back));
        v.push_back(at(lam_back * sv.r0, 0.5 * (a_prev + sv.phi), az));
        v.push_back(at(lam_back * sv.r0, up, az));
      } else {
        std::size_t i0 = 1 + static_cast<std::size_t>(u01(rng) * static_cast<double>(n - 2));
        double az = 2.0 * kPi * static_cast<double>(i0) / static_cast<double>(n);
        std::size_t last = i0 + n * static_cast<std::size_t>(s.coils - 1);
        double a_last = sample_angle(s, last);
        double a_bottom = sv.alpha_in + 0.5 * (a_last - sv.alpha_in);
        double a_top = 0.5 * (sample_angle(s, i0) + sv.phi);
        if (kind == "dip") {
          v.push_back(at(lam * sv.r0, down, az));
          v.push_back(at(lam * sv.r0, a_bottom, az));
          v.push_back(at(lam2 * sv.r0, a_bottom, az));
          v.push_back(at(lam2 * sv.r0, down, az));
        } else if (kind == "through-bottom") {
          double R0 = short_radius(a_bottom);
          if (R0 * std::cos(a_bottom) >= s.axial * 0.999) continue;
          v.push_back(at(R0, a_bottom, az));
          v.push_back(at(lam * sv.r0, a_bottom, az));
          v.push_back(at(lam * sv.r0, down, az));
        } else {
          double R0 = short_radius(a_top);
          if (R0 * std::cos(a_top) >= s.axial * 0.999) continue;
          v.push_back(at(lam * sv.r0, up, az));
          v.push_back(at(lam * sv.r0, a_top, az));
          v.push_back(at(R0, a_top, az));
        }
      }
    }
    Polyline3 p = Polyline3::from_points(v);
    if (p.size() < 2 || p.length() >= 10.0 || !scene.path_clear(p)) continue;
    bool ends_inside = false;
    for (const auto& q : quads)
      if (q.size() >= 3 && (strictly_inside(q, proj_cone(p.front())) || strictly_inside(q, proj_cone(p.back()))))
        ends_inside = true;
    if (ends_inside) continue;
    out.push_back({kind, std::move(p)});
  }
  return out;
}

CheckReport check_projection_suite(const Scene3D& scene, int count, std::uint64_t seed) {
  auto t0 = std::chrono::steady_clock::now();
  CheckReport r;
  r.id = "projection-reduction-suite";
  r.param("paths", count);
  r.param("seed", static_cast<double>(seed));
  auto paths = synthetic_paths(scene, count, seed);
  double worst_excess = -kInf, worst_ratio = 1.0, max_factor = 0.0;
  int crossings = 0, outside = 0, rerouted = 0, long_to_long = 0, errors = 0;
  std::map<std::string, int> kinds;
  for (const auto& sp : paths) {
    ++kinds[sp.kind];
    try {
      ProjectionReduction red = reduce_projection(sp.path, scene);
      worst_excess = std::max(worst_excess, red.reduced_length - 2.5 * red.projected_length);
      max_factor = std::max(max_factor, red.reduced_length / red.projected_length);
      worst_ratio = std::max(worst_ratio, red.worst_fragment_ratio);
      crossings += red.crossings;
      outside += red.inside_triangle ? 0 : 1;
      rerouted += red.rerouted;
      long_to_long += red.opposite_long_sides;
    } catch (const DomainError& e) {
      ++errors;
      r.notes.push_back(sp.kind + ": " + e.what());
    }
  }
  r.comparisons.push_back({"max (reduced - 2.5 projected)", worst_excess, Relation::AtMost, 0.0, 1e-6,
                           0.0, 0.0});
  r.comparisons.push_back({"synthetic paths", static_cast<double>(paths.size()), Relation::AtLeast,
                           20.0, 0.0, 0.0, 0.0});
  r.comparisons.push_back({"crossings with segments", static_cast<double>(crossings), Relation::AtMost,
                           0.0, 0.0, 0.0, 0.0});
  r.comparisons.push_back({"paths leaving 4 AOD", static_cast<double>(outside), Relation::AtMost, 0.0,
                           0.0, 0.0, 0.0});
  r.comparisons.push_back({"reduction errors", static_cast<double>(errors), Relation::AtMost, 0.0, 0.0,
                           0.0, 0.0});
  r.value("paths", static_cast<double>(paths.size()));
  r.value("max_length_factor", max_factor);
  r.value("worst_fragment_ratio", worst_ratio);
  r.value("rerouted_fragments", rerouted);
  r.value("long_to_long", long_to_long);
  for (const auto& [k, c] : kinds) r.value("paths_" + k, c);
  r.seconds = seconds_since(t0);
  return r;
}

// ---- Spatial violation --------------------------------------------------------

CheckReport check_violation_3d(const Scene3D& scene, const ViolationOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  CheckReport r;
  r.id = opt.control ? "violation-3d-control/J=" + std::to_string(opt.J)
                     : "violation-3d/J=" + std::to_string(opt.J);
  r.control = opt.control;
  r.param("J", opt.J);
  r.param("restarts", opt.restarts);
  r.param("seed", static_cast<double>(opt.seed));
  const Point3 A = scene.point_a(), D = scene.point_d();

  SearchOptions so;
  so.restarts = opt.restarts;
  so.seed = opt.seed;
  so.jobs = opt.jobs;
  SearchResult sr;
  bool found = true;
  try {
    sr = path_upper_bound_3d(scene, A, D, so);
  } catch (const UnreachableError& e) {
    found = false;
    sr.best_length = kInf;
    sr.restart_lengths.assign(static_cast<std::size_t>(opt.restarts), kInf);
    r.notes.push_back(std::string("search: ") + e.what() + "; audit skipped");
  }
  r.comparisons.push_back({"best found A->D length", sr.best_length, Relation::AtLeast, 12.0 / 5.0,
                           0.05, 0.0, 0.0});
  r.value("best_length", sr.best_length);
  r.value("restarts", static_cast<double>(sr.restart_lengths.size()));
  r.value("feasible_restarts", sr.feasible_restarts);
  r.value("strips", static_cast<double>(scene.strips().size()));

  // ]O,A] and ]O,D] lie on the rays alpha = 0 and alpha = pi/6, outside every
  // strip band; outside the ball the segments are checked directly.
  bool bands_inside = true;
  for (const auto& s : scene.strips())
    bands_inside = bands_inside && s.alpha_min() > 0.0 && s.alpha_max() < kWedge;
  const double rb = scene.ball_radius() * (1.0 + 1e-9);
  bool oa = bands_inside && scene.segment_clear(A, A * rb);
  bool od = bands_inside && scene.segment_clear(D, D * rb);
  double rho_ao = oa ? norm(A) : kInf;
  double rho_od = od ? norm(D) : kInf;
  r.value("rho_AO", rho_ao);
  r.value("rho_OD", rho_od);

  if (opt.control) {
    r.comparisons.push_back({"control length", sr.best_length, Relation::AtMost, dist(A, D), 1e-9,
                             0.0, 0.0});
    r.seconds = seconds_since(t0);
    return r;
  }

  r.comparisons.push_back({"rho(A,O) + rho(O,D)", rho_ao + rho_od, Relation::AtMost, 2.0, 0.0, 0.0, 0.0});
  const double margin = 12.0 / 5.0 - (rho_ao + rho_od);
  r.comparisons.push_back({"violation margin 12/5 - 2", margin, Relation::AtLeast, 0.4, 0.05, 0.0, 0.0});
  r.value("violation_margin", margin);
  r.value("search_margin", sr.best_length - (rho_ao + rho_od));

  // Leaving the truncated cone means crossing [4A, 4D] in projection.
  Point2 a2{1.0, 0.0}, d2 = point_D();
  Point2 e0 = point_A() * scene.truncation(), e1 = point_D() * scene.truncation();
  double escape = kInf;
  const int m = 20000;
  for (int i = 0; i <= m; ++i) {
    Point2 q = e0 + (e1 - e0) * (double(i) / m);
    escape = std::min(escape, dist(a2, q) + dist(q, d2));
  }
  const double analytic_escape = 2.0 * (2.0 * std::sqrt(3.0) - 1.0);
  r.comparisons.push_back({"escape route length", escape, Relation::AtLeast, analytic_escape, 0.0, 0.0, 0.0});
  r.comparisons.push_back({"2(2 sqrt3 - 1) vs 4", analytic_escape, Relation::AtLeast, 4.0, 0.0, 0.0, 0.0});
  r.value("escape_length", escape);

  // Planar chain on this instance: family oracle length / (5/2) >= 12/5.
  SegmentFamily fam(opt.J);
  Scene2D plane = family_scene(fam, true);
  double fam_len = kInf;
  try {
    fam_len = shortest_path_2d(plane, point_A(), point_D()).length;
  } catch (const UnreachableError&) {
    r.notes.push_back("planar family scene is disconnected between A and D");
  }
  r.comparisons.push_back({"family oracle / (5/2)", fam_len / 2.5, Relation::AtLeast, 12.0 / 5.0, 0.0,
                           0.0, 0.0});
  r.value("family_length", fam_len);

  if (!found) {
    r.seconds = seconds_since(t0);
    return r;
  }
  std::string branch;
  if (sr.best_length >= 10.0) {
    branch = "length>=10";
  } else {
    branch = "reduction";
  }
  try {
    ProjectionReduction red = reduce_projection(sr.best, scene, false);
    r.value("audit_projected", red.projected_length);
    r.value("audit_reduced", red.reduced_length);
    r.comparisons.push_back({"audit: reduced length", red.reduced_length, Relation::AtMost,
                             2.5 * red.projected_length, 1e-6, 0.0, 0.0});
    r.comparisons.push_back({"audit: crossings", static_cast<double>(red.crossings), Relation::AtMost,
                             0.0, 0.0, 0.0, 0.0});
    bool off_disk = true;
    for (auto p : red.reduced.vertices())
      if (plane.in_open_disk(p)) off_disk = false;
    if (off_disk && red.crossings == 0 && std::isfinite(fam_len))
      r.comparisons.push_back({"audit: reduced vs family oracle", red.reduced_length, Relation::AtLeast,
                               fam_len, 1e-6, 0.0, 0.0});
    else
      r.notes.push_back("reduced curve enters the truncation disk; family comparison skipped");
  } catch (const DomainError& e) {
    r.notes.push_back(std::string("audit reduction not applicable: ") + e.what());
  }
  r.notes.push_back("audit branch: " + branch);
  r.seconds = seconds_since(t0);
  return r;
}

CheckReport check_violation_3d(const ViolationOptions& opt) {
  if (opt.J < 1 || opt.J > 2) throw ParameterError("violation check supports J in {1, 2}");
  if (opt.control) return check_violation_3d(Scene3D({}, std::ldexp(1.0, -opt.J)), opt);
  return check_violation_3d(gen_strips(opt.J, opt.margin), opt);
}

}  // namespace bmetric
