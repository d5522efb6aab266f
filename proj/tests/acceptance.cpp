// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Run with -v to print the full reports.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "bmetric/constructions.hpp"
#include "bmetric/verify.hpp"

using namespace bmetric;

namespace {

bool verbose = false;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<CheckReport> reports;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void add(const CheckReport& r, bool expect_pass = true) {
    reports.push_back(r);
    require(r.pass() == expect_pass, r.id);
  }
  void info(const char* fmt, double v) {
    char buf[128];
    std::snprintf(buf, sizeof buf, fmt, v);
    detail += (detail.empty() ? "" : "; ") + std::string(buf);
  }
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  char lim[64];
  std::snprintf(lim, sizeof lim, "runtime %.1fs <= %.0fs", secs, limit_s);
  o.require(secs <= limit_s, lim);
  std::printf("%s criterion %d (%s): %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
  if (verbose || !o.pass)
    for (const auto& r : o.reports) std::fputs(format_report(r).c_str(), stdout);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "-v") == 0) verbose = true;

  criterion(1, "triangle inequality on planar scenes", 60, [](Outcome& o) {
    SuiteOptions opt;
    auto reports = run_suite("thm1", opt);
    o.require(reports.size() >= 5, "at least 5 scenes");
    double worst = -1e300;
    for (const auto& r : reports) {
      o.add(r);
      o.require(r.value_of("finite_triples") >= 100, r.id + " has 100 evaluated triples");
      o.require(r.headline().slack <= 1e-6, "budget at most 1e-6");
      worst = std::max(worst, r.headline().measured);
    }
    o.info("%.0f scenes", static_cast<double>(reports.size()));
    o.info("worst excess %.3g", worst);
  });

  criterion(2, "passage cost per layer", 10, [](Outcome& o) {
    for (int j0 : {1, 2, 3}) {
      CheckReport r = check_passage_cost(j0);
      o.add(r);
      const double u = std::ldexp(1.0, -j0);
      o.require(r.headline().measured >= 6 * u - 1e-6, "passage >= 6 2^-j0 - 1e-6");
      o.require(r.headline().slack <= 1e-6, "tolerance 1e-6");
      if (j0 == 1) o.require(r.comparisons[1].measured == 6.0, "composed bound equals 6 at j0 = 1");
    }
    o.info("min passage at j0=3 %.6g", check_passage_cost(3).headline().measured);
  });

  criterion(3, "family blocking, J = 2", 60, [](Outcome& o) {
    CheckReport r = check_family_blocking(2, 0.05);
    o.add(r);
    o.require(r.headline().measured >= 6 * 0.95, "length >= 5.7");
    CheckReport c = check_family_blocking(2, 0.05, true);
    o.add(c);
    o.require(c.comparisons.size() > 1 && c.comparisons[1].measured <= 2.1, "control <= 2.1");
    o.info("A->D %.6g", r.headline().measured);
    o.info("control %.6g", c.headline().measured);
  });

  criterion(4, "labyrinth corridors, j <= 2", 300, [](Outcome& o) {
    CheckReport r = check_labyrinth_level(2);
    o.add(r);
    o.require(r.headline().measured >= 10.0, "corridor >= 10");
    o.require(r.comparisons[1].measured <= 0.01, "chord budget <= 1%");
    SegmentFamily f(1);
    CheckReport c = check_labyrinth(1, 1, 1, choose_eps(f, 1, 1, 1));
    o.add(c);
    o.require(!c.headline().pass(), "M = 1 control fails");
    o.info("min corridor %.6g", r.headline().measured);
    o.info("max chord budget %.3g", r.comparisons[1].measured);
  });

  criterion(5, "trapezium ratio", 10, [](Outcome& o) {
    CheckReport r = check_trapezium_ratio(gen_strips(2), 10000, 11);
    o.add(r);
    o.require(r.headline().measured <= 2.5, "ratio <= 5/2");
    o.require(std::sqrt(3.0) / 4.0 > 2.0 / 5.0, "sqrt(3)/4 > 2/5");
    o.info("max ratio %.6g", r.headline().measured);
  });

  criterion(6, "spatial violation, J = 2", 600, [](Outcome& o) {
    ViolationOptions v;
    v.J = 2;
    v.restarts = 64;
    CheckReport r = check_violation_3d(v);
    o.add(r);
    o.require(r.value_of("rho_AO") == 1.0 && r.value_of("rho_OD") == 1.0, "rho(A,O) = rho(O,D) = 1");
    o.require(r.headline().measured >= 2.4 - 0.05, "no path shorter than 12/5 - 0.05");
    o.require(r.value_of("restarts") >= 64, "64 restarts");
    o.require(12.0 / 5.0 > 2.0, "12/5 > 2");
    o.info("best found %.6g", r.headline().measured);
    o.info("margin %.3g", 12.0 / 5.0 - 2.0);
  });

  criterion(7, "projection reduction", 60, [](Outcome& o) {
    Scene3D s = gen_strips(2);
    CheckReport r = check_projection_suite(s, 24, 5);
    o.add(r);
    o.require(r.value_of("paths") >= 20, "at least 20 paths");
    o.info("worst reduced - 2.5 projected %.3g", r.headline().measured);
  });

  criterion(8, "geodesics", 60, [](Outcome& o) {
    Scene2D slit = Scene2D::box({-2, -2}, {2, 2}, {{{0, -1}, {0, 1}}});
    CheckReport cv = check_geodesic("convex", Scene2D::box({0, 0}, {2, 2}), {0.3, 0.4}, {1.7, 1.5});
    CheckReport sl = check_geodesic("slit", slit, {-1, 0}, {1, 0});
    CheckReport cb = check_geodesic("comb16", comb_scene(16), {0, 0}, {1, 1});
    for (const auto* r : {&cv, &sl}) {
      o.add(*r);
      o.require(r->headline().measured <= 1e-6 * r->value_of("length"), r->id + " additivity");
    }
    o.reports.push_back(cb);
    o.require(cb.comparisons[1].pass(), "upper direction on comb");
    o.info("slit deviation %.3g", sl.headline().measured);
    o.info("comb upper violation %.3g", cb.comparisons[1].measured);
  });

  criterion(9, "comb divergence", 60, [](Outcome& o) {
    CheckReport r = check_comb_divergence({4, 8, 16, 32}, 0.01);
    o.add(r);
    double prev = 0;
    for (int n : {4, 8, 16, 32}) {
      double v = r.value_of("length@N=" + std::to_string(n));
      o.require(v > prev, "strictly increasing");
      prev = v;
    }
    o.info("min increment %.4g", r.headline().measured);
  });

  criterion(10, "visibility vs grid oracle", 120, [](Outcome& o) {
    CheckReport r = check_oracle_crosscheck(50, 0.01, 3);
    o.add(r);
    o.require(r.value_of("scenes") >= 50, "50 scenes");
    o.info("worst grid excess %.3g", r.headline().measured);
  });

  std::printf("%s: %d of 10 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
