#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "bmetric/error.hpp"
#include "bmetric/verify.hpp"

namespace bmetric {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

CheckReport check_comb_divergence(const std::vector<int>& Ns, double min_increment) {
  auto t0 = std::chrono::steady_clock::now();
  if (Ns.size() < 2) throw ParameterError("need at least two truncations");
  for (std::size_t i = 1; i < Ns.size(); ++i)
    if (Ns[i] <= Ns[i - 1]) throw ParameterError("truncations must increase");
  if (!(min_increment > 0.0)) throw ParameterError("minimum increment must be positive");
  CheckReport r;
  r.id = "comb-divergence";
  std::string ns;
  for (int n : Ns) ns += (ns.empty() ? "" : ",") + std::to_string(n);
  r.param("N", ns);
  r.param("min_increment", min_increment);
  const Point2 O{0.0, 0.0}, E{1.0, 1.0};
  std::vector<double> L;
  int unconverged = 0;
  for (int n : Ns) {
    RhoEstimate e = rho(comb_scene(n), O, E);
    if (!e.converged) ++unconverged;
    L.push_back(e.value);
    r.value("length@N=" + std::to_string(n), e.value);
  }
  double min_inc = kInf;
  for (std::size_t i = 1; i < L.size(); ++i) min_inc = std::min(min_inc, L[i] - L[i - 1]);
  // Least-squares slope of L against log N.
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < L.size(); ++i) {
    mx += std::log(Ns[i]);
    my += L[i];
  }
  mx /= L.size();
  my /= L.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < L.size(); ++i) {
    double dx = std::log(Ns[i]) - mx;
    sxy += dx * (L[i] - my);
    sxx += dx * dx;
  }
  const double slope = sxy / sxx;
  const double first_inc = L[1] - L[0];
  const double last_inc = L.back() - L[L.size() - 2];
  r.comparisons.push_back({"min increment", min_inc, Relation::AtLeast, min_increment, 0.0, 0.0, 0.0});
  r.comparisons.push_back({"|E| < L(first)", L.front(), Relation::AtLeast, norm(E), 0.0, 0.0, 0.0});
  // No plateau: the growth per step does not die out.
  r.comparisons.push_back({"last/first increment", last_inc / first_inc, Relation::AtLeast, 0.5, 0.0,
                           0.0, 0.0});
  r.comparisons.push_back({"unconverged estimates", static_cast<double>(unconverged), Relation::AtMost,
                           0.0, 0.0, 0.0, 0.0});
  r.value("slope_vs_logN", slope);
  r.value("min_increment", min_inc);
  r.seconds = seconds_since(t0);
  return r;
}

CheckReport check_geodesic(const std::string& scene_name, const Scene2D& scene, Point2 x, Point2 y,
                           double tol, const OffsetSchedule& schedule) {
  auto t0 = std::chrono::steady_clock::now();
  CheckReport r;
  r.id = "geodesic/" + scene_name;
  r.param("x", std::to_string(x.x) + ";" + std::to_string(x.y));
  r.param("y", std::to_string(y.x) + ";" + std::to_string(y.y));
  r.param("tol", tol);
  MetricEngine eng(scene, schedule, tol);
  Geodesic g = eng.geodesic(x, y, 10);
  const double L = g.length;
  r.comparisons.push_back({"additivity deviation", g.additivity_deviation, Relation::AtMost, 0.0,
                           tol * L, 0.0, 0.0});
  r.comparisons.push_back({"upper violation", g.upper_violation, Relation::AtMost, 0.0,
                           tol * std::max(1.0, L), 0.0, 0.0});
  r.comparisons.push_back({"endpoint gap", std::max(dist(g.path.front(), x), dist(g.path.back(), y)),
                           Relation::AtMost, 0.0, 0.0, 0.0, 0.0});
  r.value("length", L);
  r.value("path_length", g.path.length());
  r.value("additivity_deviation", g.additivity_deviation);
  r.value("upper_violation", g.upper_violation);
  r.value("vertices", static_cast<double>(g.path.size()));
  r.seconds = seconds_since(t0);
  return r;
}

CheckReport check_length_convergence(const std::string& scene_name, const Scene2D& scene, Point2 x,
                                     Point2 y, const OffsetSchedule& schedule, double tol,
                                     int within_level) {
  auto t0 = std::chrono::steady_clock::now();
  CheckReport r;
  r.id = "length-convergence/" + scene_name;
  r.param("offsets", schedule.str());
  r.param("tol", tol);
  r.param("within_level", within_level);
  MetricEngine eng(scene, schedule, tol);
  LengthConvergence lc = eng.length_convergence_check(x, y);
  double level = lc.converged_level < 0 ? kInf : lc.converged_level;
  r.comparisons.push_back({"converged level", level, Relation::AtMost, static_cast<double>(within_level),
                           0.0, 0.0, 0.0});
  r.comparisons.push_back({"fragment excess", lc.fragment_violation, Relation::AtMost, 0.0, tol, 0.0, 0.0});
  for (std::size_t m = 0; m < lc.deviation.size(); ++m) r.value("deviation@" + std::to_string(m), lc.deviation[m]);
  r.seconds = seconds_since(t0);
  return r;
}

}  // namespace bmetric
