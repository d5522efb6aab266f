#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <regex>
#include <sstream>

#include "bmetric/constructions.hpp"
#include "bmetric/error.hpp"
#include "bmetric/io.hpp"

using namespace bmetric;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

std::string tmp(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "bmetric_io_test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

}  // namespace

TEST(SceneFile, PlanarRoundTrip) {
  SceneFile f = SceneFile::planar("segment-family", family_scene(SegmentFamily(2), true), {{"J", 2}});
  SceneFile g = scene_from_json(scene_to_json(f));
  EXPECT_EQ(g.kind, "segment-family");
  ASSERT_EQ(g.segments.size(), 45u);
  for (std::size_t i = 0; i < f.segments.size(); ++i) {
    EXPECT_LE(dist(f.segments[i].a, g.segments[i].a), 1e-12);
    EXPECT_LE(dist(f.segments[i].b, g.segments[i].b), 1e-12);
  }
  ASSERT_TRUE(g.disk.has_value());
  EXPECT_EQ(g.disk->radius, f.disk->radius);
  EXPECT_EQ(scene_to_json(g), scene_to_json(f));
}

TEST(SceneFile, SpatialRoundTrip) {
  Scene3D s = gen_strips(1);
  SceneFile f = SceneFile::spatial_scene("spiral-strips", s, {{"J", 1}});
  write_scene(f, tmp("strips.json"));
  SceneFile g = read_scene(tmp("strips.json"));
  ASSERT_TRUE(g.spatial());
  ASSERT_EQ(g.strips.size(), 6u);
  for (std::size_t k = 0; k < 6; ++k) {
    const auto& a = f.strips[k];
    const auto& b = g.strips[k];
    EXPECT_EQ(a.coils, b.coils);
    EXPECT_EQ(a.samples_per_coil, b.samples_per_coil);
    EXPECT_EQ(a.eps, b.eps);
    ASSERT_EQ(a.inner.size(), b.inner.size());
    for (std::size_t i = 0; i < a.inner.size(); ++i) EXPECT_LE(dist(a.inner[i], b.inner[i]), 1e-12);
  }
  Scene3D back = g.scene3d();
  EXPECT_EQ(back.ball_radius(), s.ball_radius());
}

TEST(SceneFile, CombKeepsGenerators) {
  SceneFile f = SceneFile::planar("comb", comb_scene(8), {{"N", 8}});
  f.generators = gen_comb(8).segments();
  SceneFile g = scene_from_json(scene_to_json(f));
  EXPECT_EQ(g.generators.size(), 33u);
  EXPECT_EQ(g.ambient.size(), f.ambient.size());
}

TEST(SceneFile, Rejections) {
  EXPECT_THROW(scene_from_json("{"), IoError);
  EXPECT_THROW(scene_from_json("[]"), IoError);
  SceneFile f = SceneFile::planar("custom", Scene2D::box({0, 0}, {1, 1}));
  std::string text = scene_to_json(f);
  std::string bumped = std::regex_replace(text, std::regex("\"version\": 1"), "\"version\": 2");
  ASSERT_NE(bumped, text);
  EXPECT_THROW(scene_from_json(bumped), IoError);
  std::string wrong = std::regex_replace(text, std::regex("bmetric-scene"), "other");
  EXPECT_THROW(scene_from_json(wrong), IoError);
  EXPECT_THROW(read_scene(tmp("does-not-exist.json")), IoError);
  EXPECT_THROW(f.scene3d(), IoError);
}

TEST(RunConfig, Validation) {
  RunConfig c;
  EXPECT_NO_THROW(c.validate());
  c.tol = 0;
  EXPECT_THROW(c.validate(), ParameterError);
  c.tol = 1e-6;
  c.schedule.count = 2;
  EXPECT_THROW(c.validate(), ParameterError);
}

TEST(RunConfig, OutputDirectoryResolution) {
  EXPECT_EQ(resolve_out_dir("given"), "given");
  ::setenv("BMETRIC_OUT_DIR", "/tmp/from-env", 1);
  EXPECT_EQ(resolve_out_dir(""), "/tmp/from-env");
  ::unsetenv("BMETRIC_OUT_DIR");
  EXPECT_EQ(resolve_out_dir(""), ".");
}

TEST(Csv, ReportsAreDeterministic) {
  auto run = [] {
    std::vector<CheckReport> rs{check_comb_divergence({4, 8})};
    std::ostringstream a, b;
    write_reports_csv(a, rs);
    write_values_csv(b, rs);
    return a.str() + b.str();
  };
  std::string first = run();
  EXPECT_EQ(first, run());
  EXPECT_EQ(first.rfind("id,measured,bound,budget,slack,control,pass\n", 0), 0u);
  EXPECT_NE(first.find("comb-divergence,"), std::string::npos);
}

TEST(Csv, ValuesRoundTripThroughFile) {
  CheckReport r;
  r.id = "a,b";
  r.value("length@N=4", 1.5);
  r.value("plain", 2.0);
  std::ostringstream out;
  write_values_csv(out, {r});
  write_text_file(tmp("values.csv"), out.str());
  auto rows = read_values_csv(tmp("values.csv"));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].id, "a,b");
  EXPECT_EQ(rows[0].key, "length@N=4");
  EXPECT_EQ(rows[0].value, 1.5);
}

TEST(Svg, FamilyShowsAllSegmentsInWedge) {
  SceneFile f = SceneFile::planar("segment-family", family_scene(SegmentFamily(2), true));
  std::string svg = scene_svg(f);
  EXPECT_EQ(count(svg, "class=\"obstacle\""), 45u);
  EXPECT_EQ(count(svg, "class=\"wedge\""), 1u);
  EXPECT_EQ(svg, scene_svg(f));
}

TEST(Svg, EmptySceneIsWedgeOnly) {
  SceneFile f = SceneFile::planar("triangle", triangle_scene(4.0));
  std::string svg = scene_svg(f);
  EXPECT_EQ(count(svg, "class=\"wedge\""), 1u);
  EXPECT_EQ(count(svg, "class=\"obstacle\""), 0u);
  EXPECT_EQ(count(svg, "class=\"path\""), 0u);
}

TEST(Svg, PathOverlayAndCurves) {
  Scene2D comb = comb_scene(8);
  SceneFile f = SceneFile::planar("comb", comb);
  Geodesic g = geodesic(comb, {0, 0}, {1, 1});
  EXPECT_GT(g.path.size(), 8u);
  std::string svg = scene_svg(f, {g.path});
  EXPECT_EQ(count(svg, "class=\"path\""), 1u);
  std::vector<ValueRow> rows{{"c", "length@N=4", 2.0}, {"c", "length@N=8", 2.5}, {"c", "other", 1.0}};
  std::string curves = curves_svg(rows);
  EXPECT_EQ(count(curves, "class=\"curve\""), 1u);
  EXPECT_EQ(count(curves, "<circle"), 2u);
  EXPECT_THROW(curves_svg({{"c", "other", 1.0}}), IoError);
}
