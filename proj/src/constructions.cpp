#include "bmetric/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bmetric/error.hpp"

namespace bmetric {

// ---- Comb ----------------------------------------------------------------

CombDomain gen_comb(int levels) {
  if (levels < 1) throw ParameterError("comb needs at least one level");
  CombDomain c;
  c.levels = levels;
  for (int n = 1; n <= levels; ++n) {
    double dn = n;
    c.teeth.push_back({1, n, {{1.0 / dn, 1.0 / dn}, {1.0 / (dn + 1.0), 0.0}}});
    c.teeth.push_back({2, n + 1, {{1.0 / (dn + 1.0), 1.0 / (dn + 1.0)}, {1.0 / (dn + 1.0), 0.0}}});
    Point2 v{4.0 / (4.0 * dn + 3.0), 2.0 / (4.0 * dn + 3.0)};
    c.teeth.push_back({3, n, {{1.0 / dn, 2.0 / dn}, v}});
    c.teeth.push_back({4, n, {{1.0 / (dn + 1.0), 2.0 / (dn + 1.0)}, v}});
  }
  return c;
}

std::vector<Segment2> CombDomain::segments() const {
  std::vector<Segment2> out{fixed};
  for (const auto& t : teeth) out.push_back(t.seg);
  return out;
}

std::vector<Point2> CombDomain::polygon() const {
  const int N = levels;
  std::vector<Point2> poly{origin, {1.0 / (N + 1.0), 0.0}};
  // Lower sawtooth from the innermost valley out to (1, 1).
  for (int n = N; n >= 1; --n) {
    poly.push_back({1.0 / n, 1.0 / n});
    if (n > 1) poly.push_back({1.0 / n, 0.0});
  }
  poly.push_back({1.0, 2.0});
  // Upper zigzag back towards the origin.
  for (int n = 1; n <= N; ++n) {
    poly.push_back({4.0 / (4.0 * n + 3.0), 2.0 / (4.0 * n + 3.0)});
    poly.push_back({1.0 / (n + 1.0), 2.0 / (n + 1.0)});
  }
  return poly;
}

Scene2D comb_scene(int levels) {
  CombDomain c = gen_comb(levels);
  // The last vertical tooth hangs into the closing triangle.
  Segment2 last{{1.0 / (levels + 1.0), 1.0 / (levels + 1.0)}, {1.0 / (levels + 1.0), 0.0}};
  return Scene2D(c.polygon(), {last});
}

// ---- Segment family --------------------------------------------------------

int segments_at_level(int j) {
  if (j < 1) throw ParameterError("level must be at least 1");
  return static_cast<int>(std::floor(std::pow(2.0 * kPi, j)));
}

double segment_angle(int j, int k) { return k * std::pow(2.0 * kPi, -j) * kWedge; }

SegmentFamily::SegmentFamily(int levels) : levels_(levels) {
  if (levels < 1) throw ParameterError("family needs at least one level");
  if (levels > 4) throw ParameterError("family depth above 4 is not supported");
  for (int j = 1; j <= levels; ++j) {
    level_start_.push_back(items_.size());
    const double r = std::ldexp(1.0, -j);
    for (int k = 1; k <= segments_at_level(j); ++k) {
      double phi = segment_angle(j, k);
      Point2 x = unit(phi) * r;
      items_.push_back({j, k, phi, {x, x * 11.0}});
    }
  }
}

const FamilySegment& SegmentFamily::at(int j, int k) const {
  if (j < 1 || j > levels_ || k < 1 || k > segments_at_level(j))
    throw ParameterError("no segment (" + std::to_string(j) + ", " + std::to_string(k) + ")");
  return items_[level_start_[j - 1] + static_cast<std::size_t>(k - 1)];
}

std::vector<Segment2> SegmentFamily::plain() const {
  std::vector<Segment2> out;
  out.reserve(items_.size());
  for (const auto& s : items_) out.push_back(s.seg);
  return out;
}

SegmentFamily gen_segment_family(int levels) { return SegmentFamily(levels); }

Scene2D triangle_scene(double scale, std::vector<Segment2> obstacles, std::optional<Disk> disk) {
  return Scene2D({{0.0, 0.0}, point_A() * scale, point_D() * scale}, std::move(obstacles), disk);
}

Scene2D family_scene(const SegmentFamily& family, bool with_disk) {
  std::optional<Disk> disk;
  if (with_disk) disk = Disk{{0.0, 0.0}, std::ldexp(1.0, -family.levels())};
  return triangle_scene(4.0, family.plain(), disk);
}

// ---- Spirals and strips ---------------------------------------------------

double spiral_start_radius(int j, int k) { return std::ldexp(1.0, -j) * std::sin(segment_angle(j, k)); }

double spiral_axial(int j, int k) { return std::ldexp(1.0, -j) * std::cos(segment_angle(j, k)); }

SpiralStrip make_strip(int j, int k, int coils, double eps, int samples_per_coil) {
  if (coils < 1) throw ParameterError("spiral needs at least one coil");
  if (samples_per_coil < 3) throw ParameterError("need at least 3 samples per coil");
  const double rho0 = spiral_start_radius(j, k);
  if (!(eps > 0.0) || 2.0 * kPi * coils * eps >= rho0)
    throw ParameterError("spiral pitch must satisfy 0 < 2 pi M eps < rho");
  SpiralStrip s;
  s.level = j;
  s.index = k;
  s.coils = coils;
  s.samples_per_coil = samples_per_coil;
  s.eps = eps;
  s.axial = spiral_axial(j, k);
  s.start_radius = rho0;
  const std::size_t n = static_cast<std::size_t>(coils) * samples_per_coil;
  s.inner.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    double psi = 2.0 * kPi * static_cast<double>(i) / samples_per_coil;
    double rho = rho0 - eps * psi;
    s.inner.push_back({s.axial, rho * std::cos(psi), rho * std::sin(psi)});
  }
  return s;
}

Polyline3 gen_spiral(int j, int k, int coils, double eps, int samples_per_coil) {
  return Polyline3(make_strip(j, k, coils, eps, samples_per_coil).inner);
}

double eps_cap(double rho, int coils) {
  if (coils < 1) throw ParameterError("spiral needs at least one coil");
  return rho / (16.0 * kPi * coils);
}

double angular_gap_below(const SegmentFamily& family, int j, int k) {
  const FamilySegment& me = family.at(j, k);
  const double lo = std::ldexp(1.0, -j);
  const double hi = 11.0 * lo;
  double best = 0.0;
  for (const auto& s : family.segments()) {
    if (s.angle >= me.angle) continue;
    double slo = std::ldexp(1.0, -s.level);
    if (std::max(lo, slo) >= std::min(hi, 11.0 * slo)) continue;
    best = std::max(best, s.angle);
  }
  return me.angle - best;
}

double choose_eps(const SegmentFamily& family, int j, int k, int coils) {
  const double rho = spiral_start_radius(j, k);
  const double a = spiral_axial(j, k);
  const double phi = segment_angle(j, k);
  const double lowest = phi - 0.25 * angular_gap_below(family, j, k);
  const double shrink = rho - a * std::tan(lowest);
  return std::min(eps_cap(rho, coils), shrink / (2.0 * kPi * coils));
}

LabyrinthCertificate labyrinth_certificate(const SpiralStrip& strip, bool with_upper) {
  LabyrinthCertificate c;
  LabyrinthBounds b = labyrinth_bounds(strip.plane_points(), strip.samples_per_coil, with_upper);
  c.lower = b.lower;
  c.upper = b.upper;
  c.portals = b.portals;
  if (strip.coils >= 2) {
    const double e = strip.eps;
    auto F = [e](double r) { return 0.5 * (r * std::hypot(r, e) + e * e * std::asinh(r / e)); };
    double r_start = strip.start_radius - e * 2.0 * kPi;
    double r_end = strip.start_radius - e * 2.0 * kPi * strip.coils;
    c.reference = (F(r_start) - F(r_end)) / e;
    c.chord_budget = (c.reference - c.lower) / c.reference;
  }
  return c;
}

int choose_M(const SegmentFamily& family, int j, int k, double margin, int samples_per_coil) {
  if (!(margin >= 0.0)) throw ParameterError("margin must be non-negative");
  const double target = 10.0 * (1.0 + margin);
  auto good = [&](int M) {
    SpiralStrip s = make_strip(j, k, M, choose_eps(family, j, k, M), samples_per_coil);
    return labyrinth_certificate(s, false).lower >= target;
  };
  int hi = 2;
  while (!good(hi)) {
    if (hi > (1 << 20)) throw ParameterError("no coil count reaches the target length");
    hi *= 2;
  }
  int lo = hi / 2;  // lo fails (or is 1, which always fails)
  while (hi - lo > 1) {
    int mid = lo + (hi - lo) / 2;
    if (good(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

Scene3D gen_strips(int levels, double margin, int samples_per_coil) {
  SegmentFamily family(levels);
  std::vector<SpiralStrip> strips;
  strips.reserve(family.size());
  for (const auto& s : family.segments()) {
    int M = choose_M(family, s.level, s.index, margin, samples_per_coil);
    strips.push_back(
        make_strip(s.level, s.index, M, choose_eps(family, s.level, s.index, M), samples_per_coil));
  }
  // Strips are disjoint when the angle bands of strips with overlapping radii
  // are disjoint.
  for (std::size_t i = 0; i < strips.size(); ++i)
    for (std::size_t j = i + 1; j < strips.size(); ++j) {
      const auto& a = strips[i];
      const auto& b = strips[j];
      double alo = std::ldexp(1.0, -a.level), blo = std::ldexp(1.0, -b.level);
      if (std::max(alo, blo) >= std::min(11.0 * alo, 11.0 * blo)) continue;
      if (a.alpha_min() <= b.alpha_max() && b.alpha_min() <= a.alpha_max())
        throw ParameterError("strip angle bands overlap");
    }
  return Scene3D(std::move(strips), std::ldexp(1.0, -levels));
}

Trapezium gen_trapezium(int j, int k, int coils, double eps) {
  const double a = spiral_axial(j, k);
  const double rho0 = spiral_start_radius(j, k);
  const double rho1 = rho0 - 2.0 * kPi * coils * eps;
  if (!(rho1 > 0.0)) throw ParameterError("spiral pitch too large for the trapezium");
  Point2 x0{a, rho0}, x1{a, rho1};
  return {x0, x0 * 11.0, x1 * 11.0, x1};
}

Trapezium trapezium_of(const SpiralStrip& s) { return gen_trapezium(s.level, s.index, s.coils, s.eps); }

bool TruncatedCone::contains(Point3 p, double tol) const {
  ConeCoords c = cone_coords(p, frame);
  if (c.axial < -tol) return false;
  if (c.radial > c.axial * std::tan(frame.half_angle) + tol) return false;
  const double h = 0.5 * frame.half_angle;
  return c.axial * std::cos(h) + c.radial * std::sin(h) <= scale * std::cos(h) + tol;
}

}  // namespace bmetric
