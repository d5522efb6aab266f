#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "bmetric/constructions.hpp"
#include "bmetric/error.hpp"
#include "bmetric/io.hpp"
#include "bmetric/metric.hpp"
#include "bmetric/verify.hpp"

using namespace bmetric;

namespace {

enum Exit { kOk = 0, kUsage = 1, kFailure = 2, kIo = 3 };

Point2 parse_point(const std::string& s) {
  double x = 0, y = 0;
  char c = 0;
  std::istringstream in(s);
  std::string rest;
  if (!(in >> x >> c >> y) || c != ',' || (in >> rest)) throw ParameterError("points are written x,y: '" + s + "'");
  return {x, y};
}

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

// Output location: explicit file, else <dir>/<default_name>.
std::string output_path(const std::string& file, const std::string& out_dir, const std::string& default_name) {
  return file.empty() ? join(resolve_out_dir(out_dir), default_name) : file;
}

void print_extents(const SceneFile& f) {
  if (f.spatial()) {
    std::printf("strips: %zu  ball radius: %.6g  truncation: %.6g\n", f.strips.size(), f.ball_radius, f.truncation);
    for (const auto& s : f.strips)
      std::printf("  j=%d k=%d M=%d eps=%.6e samples=%zu\n", s.level, s.index, s.coils, s.eps, s.sample_count());
    return;
  }
  Point2 lo = f.ambient.front(), hi = lo;
  for (auto p : f.ambient) lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)}, hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  std::printf("segments: %zu  ambient vertices: %zu  disk: %s\n", f.segments.size(), f.ambient.size(),
              f.disk ? "yes" : "no");
  if (!f.generators.empty()) std::printf("generator segments: %zu\n", f.generators.size());
  std::printf("extent: [%.6g, %.6g] x [%.6g, %.6g]\n", lo.x, hi.x, lo.y, hi.y);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intrinsic metrics of planar and spatial obstacle configurations"};
  app.require_subcommand(1);

  std::string out_dir, file, scene_path, offsets, suite = "all", kind, xs, ys, report_path, from, to;
  int n = 8, j = 2, jobs = 1, restarts = 64;
  std::uint64_t seed = 1;
  double tol = 1e-6;
  bool controls = false, no_disk = false;

  auto* gen = app.add_subcommand("generate", "Write a scene document");
  gen->add_option("kind", kind, "comb | family | strips | box | triangle")
      ->required()
      ->check(CLI::IsMember({"comb", "family", "strips", "box", "triangle"}));
  gen->add_option("--n", n, "Comb levels")->check(CLI::Range(1, 4096));
  gen->add_option("--j", j, "Family or strip levels")->check(CLI::Range(1, 6));
  gen->add_flag("--no-disk", no_disk, "Family without the origin disk");
  gen->add_option("--out", out_dir, "Output directory");
  gen->add_option("-o,--file", file, "Output file");

  auto* met = app.add_subcommand("metric", "Estimate the intrinsic distance between two points");
  met->add_option("--scene", scene_path, "Scene document")->required();
  met->add_option("--x", xs, "First point x,y")->required();
  met->add_option("--y", ys, "Second point x,y")->required();
  met->add_option("--tol", tol, "Convergence tolerance");
  met->add_option("--offsets", offsets, "Offset schedule initial,factor,count");
  met->add_option("--out", out_dir, "Write rho.csv to this directory");

  auto* ver = app.add_subcommand("verify", "Run verification suites");
  ver->add_option("--suite", suite, "thm1 | thm2 | thm3 | comb | oracle | all | controls")
      ->check(CLI::IsMember(suite_names()));
  ver->add_option("--j", j, "Construction depth")->check(CLI::Range(1, 2));
  ver->add_option("--seed", seed, "Random seed");
  ver->add_option("--tol", tol, "Metric tolerance");
  ver->add_option("--offsets", offsets, "Offset schedule initial,factor,count");
  ver->add_option("--jobs", jobs, "Parallel checks")->check(CLI::Range(1, 256));
  ver->add_option("--restarts", restarts, "Restarts of the spatial path search")->check(CLI::Range(1, 100000));
  ver->add_flag("--controls", controls, "Run the control checks only; they pass by failing their headline");
  ver->add_option("--out", out_dir, "Write reports.csv and values.csv to this directory");

  auto* plt = app.add_subcommand("plot", "Write an SVG figure of a scene or of recorded curves");
  plt->add_option("--scene", scene_path, "Scene document");
  plt->add_option("--report", report_path, "values.csv written by verify");
  plt->add_option("--from", from, "Overlay the shortest path from x,y");
  plt->add_option("--to", to, "... to x,y");
  plt->add_option("--out", out_dir, "Output directory");
  plt->add_option("-o,--file", file, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) {
      SceneFile f;
      std::string name;
      if (kind == "comb") {
        f = SceneFile::planar("comb", comb_scene(n), {{"N", n}});
        f.generators = gen_comb(n).segments();
        name = "comb-" + std::to_string(n) + ".json";
      } else if (kind == "family") {
        f = SceneFile::planar("segment-family", family_scene(SegmentFamily(j), !no_disk),
                              {{"J", j}, {"disk", no_disk ? 0.0 : 1.0}});
        name = "family-" + std::to_string(j) + ".json";
      } else if (kind == "strips") {
        f = SceneFile::spatial_scene("spiral-strips", gen_strips(j),
                                     {{"J", j}, {"samples_per_coil", kDefaultSamplesPerCoil}});
        name = "strips-" + std::to_string(j) + ".json";
      } else if (kind == "box") {
        f = SceneFile::planar("custom", Scene2D::box({0.0, 0.0}, {1.0, 1.0}));
        name = "box.json";
      } else {
        f = SceneFile::planar("triangle", triangle_scene(4.0));
        name = "triangle.json";
      }
      std::string path = output_path(file, out_dir, name);
      write_scene(f, path);
      std::printf("wrote %s (%s)\n", path.c_str(), f.kind.c_str());
      print_extents(f);
      return kOk;
    }

    if (*met) {
      RunConfig cfg;
      cfg.tol = tol;
      if (!offsets.empty()) cfg.schedule = OffsetSchedule::parse(offsets);
      cfg.validate();
      SceneFile f = read_scene(scene_path);
      if (f.spatial()) throw ParameterError("metric queries need a planar scene");
      Point2 x = parse_point(xs), y = parse_point(ys);
      RhoEstimate e = rho(f.scene2d(), x, y, cfg.schedule, cfg.tol);
      std::printf("rho((%.10g, %.10g), (%.10g, %.10g)) = %.12g  %s\n", x.x, x.y, y.x, y.y, e.value,
                  e.converged ? "converged" : "NOT converged");
      std::ostringstream csv;
      write_rho_csv(csv, e);
      std::fputs(csv.str().c_str(), stdout);
      if (!out_dir.empty() || std::getenv("BMETRIC_OUT_DIR"))
        write_text_file(join(resolve_out_dir(out_dir), "rho.csv"), csv.str());
      return e.converged && std::isfinite(e.value) ? kOk : kFailure;
    }

    if (*ver) {
      SuiteOptions o;
      o.J = j;
      o.seed = seed;
      o.jobs = jobs;
      o.tol = tol;
      o.restarts = restarts;
      o.controls = controls;
      if (!offsets.empty()) o.schedule = OffsetSchedule::parse(offsets);
      RunConfig cfg;
      cfg.tol = tol;
      cfg.schedule = o.schedule;
      cfg.jobs = jobs;
      cfg.validate();
      auto reports = run_suite(suite, o);
      bool all = true;
      for (const auto& r : reports) {
        std::fputs(format_report(r).c_str(), stdout);
        all = all && r.pass();
      }
      std::ostringstream rows, values;
      write_reports_csv(rows, reports);
      write_values_csv(values, reports);
      std::fputs(rows.str().c_str(), stdout);
      if (!out_dir.empty() || std::getenv("BMETRIC_OUT_DIR")) {
        std::string dir = resolve_out_dir(out_dir);
        write_text_file(join(dir, "reports.csv"), rows.str());
        write_text_file(join(dir, "values.csv"), values.str());
      }
      return all ? kOk : kFailure;
    }

    if (*plt) {
      if (scene_path.empty() == report_path.empty()) throw ParameterError("plot needs exactly one of --scene or --report");
      std::string svg, name;
      if (!report_path.empty()) {
        svg = curves_svg(read_values_csv(report_path));
        name = "curves.svg";
      } else {
        SceneFile f = read_scene(scene_path);
        std::vector<Polyline2> paths;
        if (from.empty() != to.empty()) throw ParameterError("--from and --to go together");
        if (!from.empty()) {
          if (f.spatial()) throw ParameterError("path overlays need a planar scene");
          paths.push_back(geodesic(f.scene2d(), parse_point(from), parse_point(to)).path);
        }
        svg = scene_svg(f, paths);
        name = std::filesystem::path(scene_path).stem().string() + ".svg";
      }
      std::string path = output_path(file, out_dir, name);
      write_text_file(path, svg);
      std::printf("wrote %s\n", path.c_str());
      return kOk;
    }
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kIo;
  } catch (const ParameterError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kUsage;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "failed: %s\n", e.what());
    return kFailure;
  }
  return kUsage;
}
