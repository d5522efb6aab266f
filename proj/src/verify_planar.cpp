#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include "bmetric/error.hpp"
#include "bmetric/verify.hpp"

namespace bmetric {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool valid_point(const Scene2D& sc, Point2 p) {
  if (!is_finite(p) || !sc.inside_ambient(p) || sc.in_open_disk(p) || sc.is_sealed(p)) return false;
  // Only points with a half-disk neighbourhood: slit interiors and pinch
  // vertices of the ambient polygon have two free sides.
  if (sc.on_obstacle_interior(p)) return false;
  return sc.free_sectors(p).size() == 1;
}

}  // namespace

std::vector<Point2> sample_scene_points(const Scene2D& scene, int count, double boundary_fraction,
                                        std::uint64_t seed) {
  if (count < 0) throw ParameterError("point count must be non-negative");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto [lo, hi] = scene.bbox();
  const auto& amb = scene.ambient();
  std::vector<Point2> out;
  int guard = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++guard > 200000) throw DomainError("could not sample points in the scene");
    Point2 p;
    if (u01(rng) < boundary_fraction) {
      // Obstacle, ambient edge or circle, chosen uniformly by kind.
      int kinds = 2 + (scene.disk() ? 1 : 0);
      int kind = static_cast<int>(u01(rng) * kinds);
      if (kind == 0 && !scene.obstacles().empty()) {
        const auto& s = scene.obstacles()[static_cast<std::size_t>(u01(rng) * scene.obstacles().size())];
        double t = u01(rng);
        if (u01(rng) < 0.2) t = t < 0.5 ? 0.0 : 1.0;  // endpoints are interesting
        p = s.at(t);
      } else if (kind == 2) {
        const Disk& d = *scene.disk();
        p = d.center + unit(2.0 * kPi * u01(rng)) * d.radius;
      } else {
        std::size_t i = static_cast<std::size_t>(u01(rng) * amb.size());
        p = amb[i] + (amb[(i + 1) % amb.size()] - amb[i]) * u01(rng);
      }
      if (!valid_point(scene, p)) continue;
    } else {
      p = {lo.x + (hi.x - lo.x) * u01(rng), lo.y + (hi.y - lo.y) * u01(rng)};
      if (!scene.is_free(p) || scene.is_boundary(p)) continue;
    }
    out.push_back(p);
  }
  return out;
}

CheckReport check_triangle_2d(const Scene2D& scene, const TriangleOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  if (opt.pool < 3 || opt.triples < 1) throw ParameterError("need at least 3 points and 1 triple");
  CheckReport r;
  r.id = "triangle/" + opt.scene_name;
  r.param("triples", opt.triples);
  r.param("pool", opt.pool);
  r.param("seed", static_cast<double>(opt.seed));
  MetricEngine eng(scene, opt.schedule, opt.tol);
  auto pts = sample_scene_points(scene, opt.pool, opt.boundary_fraction, opt.seed);
  const std::size_t n = pts.size();
  std::vector<double> cache(n * n, std::nan(""));
  int unconverged = 0;
  auto rho_ij = [&](std::size_t i, std::size_t j) {
    if (i == j) return 0.0;
    if (i > j) std::swap(i, j);
    double& c = cache[i * n + j];
    if (std::isnan(c)) {
      RhoEstimate e = eng.rho(pts[i], pts[j]);
      if (!e.converged && std::isfinite(e.value)) ++unconverged;
      c = e.value;
    }
    return c;
  };
  std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  double worst = -kInf;
  int boundary_triples = 0, finite_triples = 0;
  for (int t = 0; t < opt.triples; ++t) {
    std::size_t a, o, d;
    do {
      a = pick(rng);
      o = pick(rng);
      d = pick(rng);
    } while (a == o || o == d || a == d);
    if (!eng.is_interior(pts[a]) || !eng.is_interior(pts[o]) || !eng.is_interior(pts[d]))
      ++boundary_triples;
    double ad = rho_ij(a, d), ao = rho_ij(a, o), od = rho_ij(o, d);
    double excess;
    if (!std::isfinite(ao) || !std::isfinite(od))
      excess = -kInf;
    else if (!std::isfinite(ad))
      excess = kInf;
    else
      excess = ad - ao - od;
    if (std::isfinite(excess)) ++finite_triples;
    worst = std::max(worst, excess);
  }
  r.comparisons.push_back({"rho(A,D) - rho(A,O) - rho(O,D)", worst, Relation::AtMost, 0.0,
                           opt.budget, 0.0, 0.0});
  r.value("worst_excess", worst);
  r.value("boundary_triples", boundary_triples);
  r.value("finite_triples", finite_triples);
  r.value("unconverged_pairs", unconverged);
  r.value("points", static_cast<double>(n));
  if (unconverged > 0) r.notes.push_back("some pair estimates did not converge; finest level used");
  r.seconds = seconds_since(t0);
  return r;
}

// ---- Passage cost -------------------------------------------------------------

namespace {

struct Figure {
  double r_in, r_out, a0, a1;

  bool contains(Point2 p) const {
    double r = norm(p), a = angle_of(p);
    return r >= r_in && r <= r_out && a >= a0 && a <= a1;
  }
  Point2 nearest(Point2 v) const {
    if (contains(v)) return v;
    std::vector<Point2> c;
    for (double a : {a0, a1}) {
      Point2 d = unit(a);
      c.push_back(d * std::clamp(dot(v, d), r_in, r_out));
    }
    double av = std::clamp(angle_of(v), a0, a1);
    c.push_back(unit(av) * r_in);
    c.push_back(unit(av) * r_out);
    Point2 best = c.front();
    for (auto p : c)
      if (dist(p, v) < dist(best, v)) best = p;
    return best;
  }
  // Pull a point of the closure into the open angle range.
  Point2 inset(Point2 p, double eta) const {
    double r = std::clamp(norm(p), r_in, r_out);
    return unit(std::clamp(angle_of(p), a0 + eta, a1 - eta)) * r;
  }
};

std::vector<Point2> figure_candidates(const Figure& f, const Scene2D& sc,
                                      const std::vector<Point2>& nodes, double eta) {
  std::vector<Point2> raw;
  for (auto v : nodes) raw.push_back(f.nearest(v));
  const int m = 8;
  for (int i = 0; i <= m; ++i) {
    double t = static_cast<double>(i) / m;
    double r = f.r_in + (f.r_out - f.r_in) * t;
    double a = f.a0 + (f.a1 - f.a0) * t;
    raw.push_back(unit(f.a0) * r);
    raw.push_back(unit(f.a1) * r);
    raw.push_back(unit(a) * f.r_in);
    raw.push_back(unit(a) * f.r_out);
  }
  // Where the triangle cuts the layer: points of its far side inside the figure.
  const auto& amb = sc.ambient();
  for (std::size_t e = 0; e < amb.size(); ++e) {
    Point2 p = amb[e], q = amb[(e + 1) % amb.size()];
    for (int i = 0; i <= 4 * m; ++i) {
      Point2 x = p + (q - p) * (static_cast<double>(i) / (4 * m));
      if (norm(x) > 0.0 && f.contains(x)) raw.push_back(x);
    }
  }
  std::vector<Point2> out;
  for (auto p : raw) {
    Point2 q = f.inset(p, eta);
    // Stay inside the triangle: pull towards the figure centre if needed.
    Point2 c = unit(0.5 * (f.a0 + f.a1)) * (0.5 * (f.r_in + f.r_out));
    for (int k = 0; k < 40 && !sc.inside_ambient(q); ++k) q = q + (c - q) * 1e-9 * (1 << std::min(k, 30));
    if (valid_point(sc, q) && std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
  }
  return out;
}

}  // namespace

CheckReport check_passage_cost(int j0) {
  auto t0 = std::chrono::steady_clock::now();
  if (j0 < 1 || j0 > 4) throw ParameterError("passage level must be in 1..4");
  CheckReport r;
  r.id = "passage/j0=" + std::to_string(j0);
  r.param("j0", j0);
  const double u = std::ldexp(1.0, -j0);
  const int kj = segments_at_level(j0);
  SegmentFamily fam(j0);
  std::vector<double> bounds{0.0};
  for (int k = 1; k <= kj; ++k) bounds.push_back(segment_angle(j0, k));
  bounds.push_back(kWedge);
  const double eta = 1e-9;
  double measured = kInf;
  int worst_k = 0;
  // Separator k splits U_{k-1} (below its ray) from U_k (above).
  for (int k = 1; k <= kj; ++k) {
    std::vector<Segment2> obs;
    for (int i = std::max(1, k - 1); i <= std::min(kj, k + 1); ++i) obs.push_back(fam.at(j0, i).seg);
    Scene2D sc = triangle_scene(4.0, obs);
    VisibilityGraph g(sc);
    std::vector<Point2> nodes(sc.ambient());
    for (const auto& s : obs)
      for (auto p : {s.a, s.b})
        if (sc.inside_ambient(p)) nodes.push_back(p);
    Figure lower{4.0 * u, 8.0 * u, bounds[k - 1], bounds[k]};
    Figure upper{4.0 * u, 8.0 * u, bounds[k], bounds[k + 1]};
    auto src = figure_candidates(lower, sc, nodes, eta);
    auto dst = figure_candidates(upper, sc, nodes, eta);
    if (src.empty() || dst.empty()) continue;
    auto p = g.query_sets(src, dst);
    double len = p ? p->length : kInf;
    if (len < measured) {
      measured = len;
      worst_k = k;
    }
  }
  const double per_passage = 2.0 * 3.0 * u;
  const double composed = 6.0 * u * (std::pow(3.0, j0) - 1.0);
  // Inset of the candidate points perturbs each end by at most eta * 8u.
  r.comparisons.push_back({"passage length", measured, Relation::AtLeast, per_passage, 1e-6,
                           2.0 * eta * 8.0 * u, 0.0});
  r.comparisons.push_back({"composed bound 6*2^-j0*(3^j0-1)", composed, Relation::AtLeast, 6.0, 0.0,
                           0.0, 0.0});
  r.value("passage_length", measured);
  r.value("per_passage_bound", per_passage);
  r.value("composed_bound", composed);
  r.value("worst_separator", worst_k);
  r.value("separators", kj);
  r.seconds = seconds_since(t0);
  return r;
}

// ---- Family blocking -------------------------------------------------------------

double layer_sweep(const Polyline2& path, int j0) {
  const double lo = 4.0 * std::ldexp(1.0, -j0), hi = 8.0 * std::ldexp(1.0, -j0);
  std::vector<std::pair<double, double>> iv;
  const auto& v = path.vertices();
  for (std::size_t i = 1; i < v.size(); ++i) {
    Point2 p = v[i - 1], q = v[i];
    // Parameters where |p + t (q - p)| crosses lo or hi.
    std::vector<double> ts{0.0, 1.0};
    for (double rad : {lo, hi})
      for (double t : segment_circle_params(p, q, {0.0, 0.0}, rad)) ts.push_back(t);
    std::sort(ts.begin(), ts.end());
    for (std::size_t k = 1; k < ts.size(); ++k) {
      double ta = ts[k - 1], tb = ts[k];
      if (tb - ta <= 0.0) continue;
      double rm = norm(p + (q - p) * (0.5 * (ta + tb)));
      if (rm < lo || rm > hi) continue;
      Point2 a = p + (q - p) * ta, b = p + (q - p) * tb;
      if (norm(a) == 0.0 || norm(b) == 0.0) continue;
      // The polar angle is monotone along a segment that misses O.
      double fa = angle_of(a), fb = angle_of(b);
      iv.emplace_back(std::min(fa, fb), std::max(fa, fb));
    }
  }
  std::sort(iv.begin(), iv.end());
  double total = 0.0, cs = -kInf, ce = -kInf;
  for (auto [s, e] : iv) {
    if (s > ce) {
      if (ce > cs) total += ce - cs;
      cs = s;
      ce = e;
    } else {
      ce = std::max(ce, e);
    }
  }
  if (ce > cs) total += ce - cs;
  return total;
}

CheckReport check_family_blocking(int J, double eta, bool control) {
  auto t0 = std::chrono::steady_clock::now();
  if (J < 1 || J > 4) throw ParameterError("family depth must be in 1..4");
  if (!(eta >= 0.0 && eta < 1.0)) throw ParameterError("eta must lie in [0, 1)");
  CheckReport r;
  r.id = control ? "family-blocking-control/J=" + std::to_string(J)
                 : "family-blocking/J=" + std::to_string(J);
  r.control = control;
  r.param("J", J);
  r.param("eta", eta);
  SegmentFamily fam(J);
  Scene2D sc = control ? triangle_scene(4.0) : family_scene(fam, true);
  ShortestPath sp;
  sp.length = kInf;
  try {
    sp = shortest_path_2d(sc, point_A(), point_D());
  } catch (const UnreachableError&) {
    r.notes.push_back("A and D lie in different components; sweep not measured");
  }
  r.comparisons.push_back({"A->D length", sp.length, Relation::AtLeast, 6.0 * (1.0 - eta), 0.0,
                           0.0, 0.0});
  r.value("length", sp.length);
  r.value("segments", control ? 0.0 : static_cast<double>(fam.size()));
  if (control) {
    r.comparisons.push_back({"control length", sp.length, Relation::AtMost, 2.1, 0.0, 0.0, 0.0});
  } else if (std::isfinite(sp.length)) {
    // Some layer must carry an angular sweep of at least 2^-j0 pi/6.
    double best_ratio = 0.0;
    int best_j = 0;
    for (int j0 = 1; j0 <= J; ++j0) {
      double sw = layer_sweep(sp.path, j0);
      r.value("sweep_j" + std::to_string(j0), sw);
      double ratio = sw / (std::ldexp(1.0, -j0) * kWedge);
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best_j = j0;
      }
    }
    r.comparisons.push_back({"best layer sweep / (2^-j0 pi/6)", best_ratio, Relation::AtLeast, 1.0,
                             1e-9, 0.0, 0.0});
    r.value("sweep_layer", best_j);
  }
  r.seconds = seconds_since(t0);
  return r;
}

// ---- Labyrinth ----------------------------------------------------------------------

CheckReport check_labyrinth(int j, int k, int coils, double eps, int spc) {
  auto t0 = std::chrono::steady_clock::now();
  CheckReport r;
  r.id = "labyrinth/j=" + std::to_string(j) + ",k=" + std::to_string(k) + ",M=" + std::to_string(coils);
  r.control = coils == 1;
  r.param("j", j);
  r.param("k", k);
  r.param("M", coils);
  r.param("eps", eps);
  r.param("samples_per_coil", spc);
  SpiralStrip s = make_strip(j, k, coils, eps, spc);
  LabyrinthCertificate c = labyrinth_certificate(s, true);
  // The portal bound holds for the exact spiral, so it carries no sampling budget.
  r.comparisons.push_back({"certified corridor length", c.lower, Relation::AtLeast, 10.0, 0.0, 0.0, 0.0});
  r.value("lower", c.lower);
  r.value("upper", c.upper);
  r.value("reference", c.reference);
  r.value("chord_budget", c.chord_budget);
  if (coils >= 2) {
    r.comparisons.push_back({"chord budget", c.chord_budget, Relation::AtMost, 0.01, 0.0, 0.0, 0.0});
    LabyrinthCertificate fine = labyrinth_certificate(make_strip(j, k, coils, eps, 2 * spc), false);
    double change = std::abs(fine.lower - c.lower) / c.reference;
    r.comparisons.push_back({"refinement change", change, Relation::AtMost, c.chord_budget, 0.0, 0.0, 0.0});
    r.value("lower_refined", fine.lower);
  }
  r.seconds = seconds_since(t0);
  return r;
}

CheckReport check_labyrinth_level(int J, double margin, int spc) {
  auto t0 = std::chrono::steady_clock::now();
  CheckReport r;
  r.id = "labyrinth-all/J=" + std::to_string(J);
  r.param("J", J);
  r.param("margin", margin);
  r.param("samples_per_coil", spc);
  SegmentFamily fam(J);
  double min_lower = kInf, max_budget = 0.0, max_change = -kInf;
  int max_M = 0, worst_k = 0, worst_j = 0;
  for (const auto& s : fam.segments()) {
    int M = choose_M(fam, s.level, s.index, margin, spc);
    double eps = choose_eps(fam, s.level, s.index, M);
    CheckReport one = check_labyrinth(s.level, s.index, M, eps, spc);
    double lower = one.value_of("lower");
    if (lower < min_lower) {
      min_lower = lower;
      worst_j = s.level;
      worst_k = s.index;
    }
    max_budget = std::max(max_budget, one.value_of("chord_budget"));
    max_change = std::max(max_change, one.comparisons[2].measured - one.comparisons[2].bound);
    max_M = std::max(max_M, M);
  }
  r.comparisons.push_back({"min certified corridor length", min_lower, Relation::AtLeast, 10.0, 0.0, 0.0, 0.0});
  r.comparisons.push_back({"max chord budget", max_budget, Relation::AtMost, 0.01, 0.0, 0.0, 0.0});
  r.comparisons.push_back({"max refinement change beyond budget", max_change, Relation::AtMost, 0.0, 0.0,
                           0.0, 0.0});
  r.value("strips", static_cast<double>(fam.size()));
  r.value("min_lower", min_lower);
  r.value("max_chord_budget", max_budget);
  r.value("max_M", max_M);
  r.value("worst_j", worst_j);
  r.value("worst_k", worst_k);
  r.seconds = seconds_since(t0);
  return r;
}

// ---- Trapezium ratio -------------------------------------------------------------------

CheckReport check_trapezium_ratio(const Scene3D& scene, int trials, std::uint64_t seed) {
  auto t0 = std::chrono::steady_clock::now();
  if (trials < 1) throw ParameterError("need at least one trial");
  CheckReport r;
  r.id = "trapezium-ratio";
  r.param("trials_per_trapezium", trials);
  r.param("seed", static_cast<double>(seed));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double max_ratio = 0.0, min_acute = kInf, min_angle = kInf;
  bool parallel = true;
  for (const auto& s : scene.strips()) {
    Trapezium t = trapezium_of(s);
    auto v = t.ccw();
    auto ang = t.angles();
    parallel = parallel && t.short_sides_parallel(1e-9);
    for (double a : ang) min_angle = std::min(min_angle, std::min(a, kPi - a));
    for (int i = 0; i < trials; ++i) {
      int c = static_cast<int>(u01(rng) * 4) % 4;
      Point2 V = v[c], P = v[(c + 1) % 4], Q = v[(c + 3) % 4];
      Point2 p = V + (P - V) * (1.0 - u01(rng));
      Point2 q = V + (Q - V) * (1.0 - u01(rng));
      double sum = dist(V, p) + dist(V, q);
      double third = dist(p, q);
      max_ratio = std::max(max_ratio, sum / third);
      if (ang[c] < 0.5 * kPi) min_acute = std::min(min_acute, third / sum);
    }
  }
  r.comparisons.push_back({"max (sum of sides on P)/(third side)", max_ratio, Relation::AtMost, 2.5, 0.0,
                           0.0, 0.0});
  r.comparisons.push_back({"acute vertex: third/sum", min_acute, Relation::AtLeast,
                           0.5 * std::sin(kPi / 3.0), 0.0, 0.0, 0.0});
  r.comparisons.push_back({"sqrt(3)/4 vs 2/5", std::sqrt(3.0) / 4.0, Relation::AtLeast, 0.4, 0.0, 0.0, 0.0});
  r.comparisons.push_back({"smallest acute angle", min_angle, Relation::AtLeast, kPi / 3.0, 1e-12, 0.0, 0.0});
  r.comparisons.push_back({"short sides parallel", parallel ? 1.0 : 0.0, Relation::AtLeast, 1.0, 0.0, 0.0, 0.0});
  r.value("max_ratio", max_ratio);
  r.value("min_acute_ratio", min_acute);
  r.value("trapezia", static_cast<double>(scene.strips().size()));
  r.seconds = seconds_since(t0);
  return r;
}

// ---- Oracle cross-check ---------------------------------------------------------------------

RandomSlitScene random_slit_scene(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const double gap = 0.05;
  int want = 3 + static_cast<int>(u01(rng) * 4);
  std::vector<Segment2> slits;
  for (int tries = 0; tries < 2000 && static_cast<int>(slits.size()) < want; ++tries) {
    Point2 c{0.15 + 0.7 * u01(rng), 0.15 + 0.7 * u01(rng)};
    double len = 0.1 + 0.4 * u01(rng);
    Point2 d = unit(kPi * u01(rng)) * (0.5 * len);
    Segment2 s{c - d, c + d};
    bool ok = true;
    for (auto p : {s.a, s.b})
      ok = ok && p.x >= gap && p.x <= 1.0 - gap && p.y >= gap && p.y <= 1.0 - gap;
    for (const auto& o : slits) ok = ok && segment_distance(s.a, s.b, o.a, o.b) >= gap;
    if (ok) slits.push_back(s);
  }
  RandomSlitScene out{Scene2D::box({0.0, 0.0}, {1.0, 1.0}, slits), {}, {}};
  auto far_enough = [&](Point2 p) {
    for (const auto& o : slits)
      if (point_segment_distance(p, o.a, o.b) < gap) return false;
    return p.x >= gap && p.x <= 1.0 - gap && p.y >= gap && p.y <= 1.0 - gap;
  };
  do {
    out.a = {u01(rng), u01(rng)};
  } while (!far_enough(out.a));
  do {
    out.b = {u01(rng), u01(rng)};
  } while (!far_enough(out.b) || dist(out.a, out.b) < 0.3);
  return out;
}

CheckReport check_oracle_crosscheck(int scenes, double h, std::uint64_t seed) {
  auto t0 = std::chrono::steady_clock::now();
  if (scenes < 1 || !(h > 0.0)) throw ParameterError("need scenes >= 1 and h > 0");
  CheckReport r;
  r.id = "oracle-crosscheck";
  r.param("scenes", scenes);
  r.param("h", h);
  r.param("seed", static_cast<double>(seed));
  double worst_low = -kInf, worst_high = -kInf, max_ratio = 0.0;
  int bends_total = 0;
  for (int i = 0; i < scenes; ++i) {
    RandomSlitScene rs = random_slit_scene(seed * 1000003ULL + static_cast<std::uint64_t>(i));
    ShortestPath vis = shortest_path_2d(rs.scene, rs.a, rs.b);
    ShortestPath grid = grid_path_2d(rs.scene, rs.a, rs.b, h);
    int bends = static_cast<int>(vis.path.size()) - 2;
    bends_total += bends;
    worst_low = std::max(worst_low, vis.length - grid.length);
    double allowed = kGridDistortion * vis.length + kGridSlackPerVertex * h * (bends + 1);
    worst_high = std::max(worst_high, grid.length - allowed);
    max_ratio = std::max(max_ratio, grid.length / vis.length);
  }
  r.comparisons.push_back({"max (grid - distortion bound)", worst_high, Relation::AtMost, 0.0, 0.0, 0.0, 0.0});
  r.comparisons.push_back({"max (visibility - grid)", worst_low, Relation::AtMost, 0.0, 1e-9, 0.0, 0.0});
  r.value("scenes", scenes);
  r.value("max_grid_ratio", max_ratio);
  r.value("bends", bends_total);
  r.seconds = seconds_since(t0);
  return r;
}

}  // namespace bmetric
