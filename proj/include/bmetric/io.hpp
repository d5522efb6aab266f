#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bmetric/metric.hpp"
#include "bmetric/scene3d.hpp"
#include "bmetric/shortest_path.hpp"
#include "bmetric/verify.hpp"

namespace bmetric {

inline constexpr int kSceneVersion = 1;

// Scene document. Planar scenes carry ambient, segments and disk; spatial
// scenes carry strips, ball radius and truncation. Parameters are kept for
// reference only; readers use the explicit geometry.
struct SceneFile {
  std::string kind = "custom";  // comb | segment-family | spiral-strips | custom
  int dimension = 2;
  std::vector<std::pair<std::string, double>> params;
  std::vector<Point2> ambient;
  std::vector<Segment2> segments;
  std::optional<Disk> disk;
  // Segments the scene was built from when the geometry folds them into the
  // ambient boundary (the comb). Not read back into the scene.
  std::vector<Segment2> generators;
  std::vector<SpiralStrip> strips;
  double ball_radius = 0.0;
  double truncation = 4.0;

  bool spatial() const { return dimension == 3; }
  Scene2D scene2d() const;
  Scene3D scene3d() const;

  static SceneFile planar(std::string kind, const Scene2D& scene,
                          std::vector<std::pair<std::string, double>> params = {});
  static SceneFile spatial_scene(std::string kind, const Scene3D& scene,
                                 std::vector<std::pair<std::string, double>> params = {});
};

std::string scene_to_json(const SceneFile& f);
SceneFile scene_from_json(const std::string& text);
void write_scene(const SceneFile& f, const std::string& path);
SceneFile read_scene(const std::string& path);

struct RunConfig {
  double tol = 1e-6;
  OffsetSchedule schedule{};
  int samples_per_coil = kDefaultSamplesPerCoil;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string out_dir = ".";

  void validate() const;
};

// Explicit value, else $BMETRIC_OUT_DIR, else the working directory.
std::string resolve_out_dir(const std::string& flag);

// One row per check: id, measured, bound, budget, slack, control, pass.
void write_reports_csv(std::ostream& out, const std::vector<CheckReport>& reports);
// Recorded values of every check: id, key, value.
void write_values_csv(std::ostream& out, const std::vector<CheckReport>& reports);
// Per-offset table of a distance estimate.
void write_rho_csv(std::ostream& out, const RhoEstimate& e);

struct ValueRow {
  std::string id, key;
  double value = 0.0;
};
std::vector<ValueRow> read_values_csv(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// ---- Figures ---------------------------------------------------------------

// Obstacles as class="obstacle" lines. Family and triangle scenes also get
// the outline of 6 triangle AOD.
std::string scene_svg(const SceneFile& f, const std::vector<Polyline2>& paths = {});
// Curves from values keyed "series@x" or "series@name=x".
std::string curves_svg(const std::vector<ValueRow>& rows);

}  // namespace bmetric
