#include <atomic>
#include <chrono>
#include <functional>
#include <memory>
#include <thread>

#include "bmetric/error.hpp"
#include "bmetric/verify.hpp"

namespace bmetric {

namespace {

using Task = std::function<CheckReport()>;

void add_thm1(std::vector<Task>& t, const SuiteOptions& o) {
  struct Named {
    std::string name;
    std::function<Scene2D()> make;
  };
  std::vector<Named> scenes{
      {"convex", [] { return Scene2D::box({0.0, 0.0}, {2.0, 2.0}); }},
      {"slit", [] { return Scene2D::box({-2.0, -2.0}, {2.0, 2.0}, {{{0.0, -1.0}, {0.0, 1.0}}}); }},
      {"random-slits", [] { return random_slit_scene(17).scene; }},
      {"comb16", [] { return comb_scene(16); }},
      {"family1-open", [] { return family_scene(SegmentFamily(1), false); }},
  };
  for (const auto& s : scenes)
    t.push_back([s, o] {
      TriangleOptions opt;
      opt.scene_name = s.name;
      opt.seed = o.seed + 6;
      opt.schedule = o.schedule;
      opt.tol = o.tol;
      return check_triangle_2d(s.make(), opt);
    });
}

void add_thm2(std::vector<Task>& t, const SuiteOptions& o) {
  for (int j0 : {1, 2, 3}) t.push_back([j0] { return check_passage_cost(j0); });
  t.push_back([o] { return check_family_blocking(o.J); });
  t.push_back([o] { return check_labyrinth_level(o.J); });
  auto strips = std::make_shared<Scene3D>(gen_strips(o.J));
  t.push_back([strips, o] { return check_trapezium_ratio(*strips, 10000, o.seed + 10); });
  t.push_back([strips, o] { return check_projection_suite(*strips, 24, o.seed + 4); });
  t.push_back([strips, o] {
    ViolationOptions v;
    v.J = o.J;
    v.restarts = o.restarts;
    v.seed = o.seed;
    v.jobs = o.jobs;
    return check_violation_3d(*strips, v);
  });
}

void add_thm3(std::vector<Task>& t, const SuiteOptions& o) {
  t.push_back([o] {
    return check_geodesic("convex", Scene2D::box({0.0, 0.0}, {2.0, 2.0}), {0.3, 0.4}, {1.7, 1.5},
                          o.tol, o.schedule);
  });
  t.push_back([o] {
    return check_geodesic("slit", Scene2D::box({-2.0, -2.0}, {2.0, 2.0}, {{{0.0, -1.0}, {0.0, 1.0}}}),
                          {-1.0, 0.0}, {1.0, 0.0}, o.tol, o.schedule);
  });
  t.push_back([o] { return check_geodesic("comb8", comb_scene(8), {0.0, 0.0}, {1.0, 1.0}, o.tol, o.schedule); });
  t.push_back([o] {
    return check_length_convergence("slit",
                                    Scene2D::box({-2.0, -2.0}, {2.0, 2.0}, {{{0.0, -1.0}, {0.0, 1.0}}}),
                                    {-1.0, 0.0}, {1.0, 0.0}, OffsetSchedule{1.0, 0.5, 11}, o.tol, 6);
  });
}

void add_controls(std::vector<Task>& t, const SuiteOptions& o) {
  t.push_back([o] { return check_family_blocking(o.J, 0.05, true); });
  t.push_back([] {
    SegmentFamily fam(1);
    return check_labyrinth(1, 1, 1, choose_eps(fam, 1, 1, 1));
  });
  t.push_back([o] {
    ViolationOptions v;
    v.J = o.J;
    v.restarts = o.restarts;
    v.seed = o.seed;
    v.jobs = o.jobs;
    v.control = true;
    return check_violation_3d(v);
  });
}

CheckReport failed_report(const std::string& what) {
  CheckReport r;
  r.id = "error";
  r.comparisons.push_back({"completed", 0.0, Relation::AtLeast, 1.0, 0.0, 0.0, 0.0});
  r.notes.push_back(what);
  return r;
}

}  // namespace

std::vector<std::string> suite_names() { return {"thm1", "thm2", "thm3", "comb", "oracle", "all", "controls"}; }

std::vector<CheckReport> run_suite(const std::string& name, const SuiteOptions& o) {
  if (o.J < 1 || o.J > 2) throw ParameterError("suites support J in {1, 2}");
  if (o.jobs < 1) throw ParameterError("jobs must be at least 1");
  if (!(o.tol > 0.0)) throw ParameterError("tolerance must be positive");
  o.schedule.validate();
  std::vector<Task> tasks;
  const bool all = name == "all";
  if (o.controls || name == "controls") {
    if (!all && name != "controls") throw ParameterError("controls run with --suite all or controls");
    add_controls(tasks, o);
  } else {
    bool known = false;
    if (all || name == "thm1") add_thm1(tasks, o), known = true;
    if (all || name == "thm2") add_thm2(tasks, o), known = true;
    if (all || name == "thm3") add_thm3(tasks, o), known = true;
    if (all || name == "comb") tasks.push_back([] { return check_comb_divergence(); }), known = true;
    if (all || name == "oracle") tasks.push_back([o] { return check_oracle_crosscheck(50, 0.01, o.seed + 2); }), known = true;
    if (!known) throw ParameterError("unknown suite '" + name + "'");
  }

  std::vector<CheckReport> out(tasks.size());
  auto run = [&](std::size_t i) {
    auto t0 = std::chrono::steady_clock::now();
    try {
      out[i] = tasks[i]();
    } catch (const std::exception& e) {
      out[i] = failed_report(e.what());
      out[i].seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  const std::size_t jobs = std::min<std::size_t>(static_cast<std::size_t>(o.jobs), tasks.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) run(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) run(i);
      });
    for (auto& th : pool) th.join();
  }
  return out;
}

}  // namespace bmetric
