#include "bmetric/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "bmetric/error.hpp"

namespace bmetric {

using Json = nlohmann::ordered_json;

namespace {

Json pt(Point2 p) { return Json::array({p.x, p.y}); }
Json pt(Point3 p) { return Json::array({p.x, p.y, p.z}); }

double num(const Json& j, const char* what) {
  if (!j.is_number()) throw IoError(std::string("expected a number for ") + what);
  return j.get<double>();
}

Point2 get_p2(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw IoError("expected [x, y]");
  return {num(j[0], "x"), num(j[1], "y")};
}

Point3 get_p3(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw IoError("expected [x, y, z]");
  return {num(j[0], "x"), num(j[1], "y"), num(j[2], "z")};
}

const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw IoError(std::string("missing field '") + key + "'");
  return *it;
}

int get_int(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw IoError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

Json strip_json(const SpiralStrip& s) {
  Json j;
  j["j"] = s.level;
  j["k"] = s.index;
  j["coils"] = s.coils;
  j["samples_per_coil"] = s.samples_per_coil;
  j["eps"] = s.eps;
  j["axial"] = s.axial;
  j["start_radius"] = s.start_radius;
  j["outer_scale"] = s.outer_scale;
  // Quad i of the strip is inner[i], inner[i+1], outer[i+1], outer[i].
  Json in = Json::array(), out = Json::array();
  for (std::size_t i = 0; i < s.inner.size(); ++i) {
    in.push_back(pt(s.inner[i]));
    out.push_back(pt(s.outer(i)));
  }
  j["inner"] = std::move(in);
  j["outer"] = std::move(out);
  return j;
}

SpiralStrip strip_from(const Json& j) {
  SpiralStrip s;
  s.level = get_int(j, "j");
  s.index = get_int(j, "k");
  s.coils = get_int(j, "coils");
  s.samples_per_coil = get_int(j, "samples_per_coil");
  s.eps = num(field(j, "eps"), "eps");
  s.axial = num(field(j, "axial"), "axial");
  s.start_radius = num(field(j, "start_radius"), "start_radius");
  s.outer_scale = num(field(j, "outer_scale"), "outer_scale");
  const Json& in = field(j, "inner");
  if (!in.is_array()) throw IoError("strip samples must be an array");
  for (const auto& p : in) s.inner.push_back(get_p3(p));
  auto it = j.find("outer");
  if (it != j.end()) {
    if (!it->is_array() || it->size() != s.inner.size()) throw IoError("outer samples do not match inner samples");
    for (std::size_t i = 0; i < s.inner.size(); ++i) {
      Point3 o = get_p3((*it)[i]);
      if (dist(o, s.outer(i)) > 1e-9 * std::max(1.0, norm(o)))
        throw IoError("outer sample " + std::to_string(i) + " is not outer_scale times the inner one");
    }
  }
  return s;
}

}  // namespace

Scene2D SceneFile::scene2d() const {
  if (spatial()) throw IoError("scene file holds a spatial scene");
  return Scene2D(ambient, segments, disk);
}

Scene3D SceneFile::scene3d() const {
  if (!spatial()) throw IoError("scene file holds a planar scene");
  return Scene3D(strips, ball_radius, truncation);
}

SceneFile SceneFile::planar(std::string kind, const Scene2D& scene,
                            std::vector<std::pair<std::string, double>> params) {
  SceneFile f;
  f.kind = std::move(kind);
  f.params = std::move(params);
  f.ambient = scene.ambient();
  f.segments = scene.obstacles();
  f.disk = scene.disk();
  return f;
}

SceneFile SceneFile::spatial_scene(std::string kind, const Scene3D& scene,
                                   std::vector<std::pair<std::string, double>> params) {
  SceneFile f;
  f.kind = std::move(kind);
  f.dimension = 3;
  f.params = std::move(params);
  f.strips = scene.strips();
  f.ball_radius = scene.ball_radius();
  f.truncation = scene.truncation();
  return f;
}

std::string scene_to_json(const SceneFile& f) {
  Json j;
  j["format"] = "bmetric-scene";
  j["version"] = kSceneVersion;
  j["kind"] = f.kind;
  j["dimension"] = f.dimension;
  Json params = Json::object();
  for (const auto& [k, v] : f.params) params[k] = v;
  j["params"] = std::move(params);
  if (!f.spatial()) {
    Json amb = Json::array();
    for (auto p : f.ambient) amb.push_back(pt(p));
    j["ambient"] = std::move(amb);
    Json segs = Json::array();
    for (const auto& s : f.segments) segs.push_back(Json::array({s.a.x, s.a.y, s.b.x, s.b.y}));
    j["segments"] = std::move(segs);
    if (!f.generators.empty()) {
      Json gens = Json::array();
      for (const auto& s : f.generators) gens.push_back(Json::array({s.a.x, s.a.y, s.b.x, s.b.y}));
      j["generator_segments"] = std::move(gens);
    }
    if (f.disk)
      j["disk"] = Json{{"center", pt(f.disk->center)}, {"radius", f.disk->radius}};
    else
      j["disk"] = nullptr;
  } else {
    j["ball_radius"] = f.ball_radius;
    j["truncation"] = f.truncation;
    Json strips = Json::array();
    for (const auto& s : f.strips) strips.push_back(strip_json(s));
    j["strips"] = std::move(strips);
  }
  return j.dump(1) + "\n";
}

SceneFile scene_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed scene document: ") + e.what());
  }
  if (!j.is_object()) throw IoError("scene document must be an object");
  const Json& fmt = field(j, "format");
  if (!fmt.is_string() || fmt.get<std::string>() != "bmetric-scene") throw IoError("not a scene document");
  if (get_int(j, "version") != kSceneVersion)
    throw IoError("unsupported scene version " + field(j, "version").dump());
  SceneFile f;
  const Json& kind = field(j, "kind");
  if (!kind.is_string()) throw IoError("kind must be a string");
  f.kind = kind.get<std::string>();
  f.dimension = get_int(j, "dimension");
  if (f.dimension != 2 && f.dimension != 3) throw IoError("dimension must be 2 or 3");
  auto pit = j.find("params");
  if (pit != j.end()) {
    if (!pit->is_object()) throw IoError("params must be an object");
    for (auto it = pit->begin(); it != pit->end(); ++it) f.params.emplace_back(it.key(), num(it.value(), "param"));
  }
  if (!f.spatial()) {
    const Json& amb = field(j, "ambient");
    if (!amb.is_array()) throw IoError("ambient must be an array of points");
    for (const auto& p : amb) f.ambient.push_back(get_p2(p));
    auto quads = [](const Json& arr, std::vector<Segment2>& out) {
      if (!arr.is_array()) throw IoError("segment lists must be arrays");
      for (const auto& s : arr) {
        if (!s.is_array() || s.size() != 4) throw IoError("segments must be [x1, y1, x2, y2]");
        out.push_back({{num(s[0], "x1"), num(s[1], "y1")}, {num(s[2], "x2"), num(s[3], "y2")}});
      }
    };
    quads(field(j, "segments"), f.segments);
    if (auto git = j.find("generator_segments"); git != j.end()) quads(*git, f.generators);
    auto dit = j.find("disk");
    if (dit != j.end() && !dit->is_null())
      f.disk = Disk{get_p2(field(*dit, "center")), num(field(*dit, "radius"), "radius")};
  } else {
    f.ball_radius = num(field(j, "ball_radius"), "ball_radius");
    f.truncation = num(field(j, "truncation"), "truncation");
    const Json& strips = field(j, "strips");
    if (!strips.is_array()) throw IoError("strips must be an array");
    for (const auto& s : strips) f.strips.push_back(strip_from(s));
  }
  return f;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("write failed for " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_scene(const SceneFile& f, const std::string& path) { write_text_file(path, scene_to_json(f)); }

SceneFile read_scene(const std::string& path) {
  SceneFile f = scene_from_json(read_text_file(path));
  // Surface geometry problems as I/O errors: the file is what is wrong.
  try {
    if (f.spatial())
      (void)f.scene3d();
    else
      (void)f.scene2d();
  } catch (const ParameterError& e) {
    throw IoError(path + ": " + e.what());
  }
  return f;
}

void RunConfig::validate() const {
  if (!(tol > 0.0)) throw ParameterError("tolerance must be positive");
  schedule.validate();
  if (schedule.count < 3) throw ParameterError("offset schedule needs at least three levels");
  if (samples_per_coil < 8) throw ParameterError("samples per coil must be at least 8");
  if (jobs < 1) throw ParameterError("jobs must be at least 1");
}

std::string resolve_out_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("BMETRIC_OUT_DIR"); env && *env) return env;
  return ".";
}

namespace {

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace

void write_reports_csv(std::ostream& out, const std::vector<CheckReport>& reports) {
  out << "id,measured,bound,budget,slack,control,pass\n";
  for (const auto& r : reports) {
    const Comparison& h = r.headline();
    out << csv_field(r.id) << ',' << fmt(h.measured) << ',' << fmt(h.bound) << ',' << fmt(h.budget()) << ','
        << fmt(h.slack) << ',' << (r.control ? 1 : 0) << ',' << (r.pass() ? 1 : 0) << '\n';
  }
}

void write_values_csv(std::ostream& out, const std::vector<CheckReport>& reports) {
  out << "id,key,value\n";
  for (const auto& r : reports)
    for (const auto& [k, v] : r.values) out << csv_field(r.id) << ',' << csv_field(k) << ',' << fmt(v) << '\n';
}

void write_rho_csv(std::ostream& out, const RhoEstimate& e) {
  out << "level,offset,length\n";
  if (e.offsets.empty()) {
    out << "0,0," << fmt(e.value) << '\n';
    return;
  }
  for (std::size_t i = 0; i < e.offsets.size(); ++i)
    out << i << ',' << fmt(e.offsets[i]) << ',' << fmt(e.lengths[i]) << '\n';
}

std::vector<ValueRow> read_values_csv(const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::string line;
  if (!std::getline(in, line) || line.rfind("id,key,value", 0) != 0) throw IoError(path + ": not a values table");
  std::vector<ValueRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    // Fields may be quoted; split respecting quotes.
    std::vector<std::string> f(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      char c = line[i];
      if (quoted) {
        if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') f.back() += '"', ++i;
        else if (c == '"') quoted = false;
        else f.back() += c;
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        f.emplace_back();
      } else {
        f.back() += c;
      }
    }
    if (f.size() != 3) throw IoError(path + ": bad row '" + line + "'");
    char* end = nullptr;
    double v = std::strtod(f[2].c_str(), &end);
    if (end == f[2].c_str()) throw IoError(path + ": bad value '" + f[2] + "'");
    rows.push_back({f[0], f[1], v});
  }
  return rows;
}

}  // namespace bmetric
