#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "bmetric/error.hpp"
#include "bmetric/io.hpp"

namespace bmetric {

namespace {

constexpr double kWidth = 800.0;
constexpr double kMargin = 20.0;

std::string f6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  // Avoid "-0.000000" so output does not depend on the sign of tiny values.
  if (std::string(buf) == "-0.000000") return "0.000000";
  return buf;
}

std::string esc(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '<') o += "&lt;";
    else if (c == '>') o += "&gt;";
    else if (c == '&') o += "&amp;";
    else if (c == '"') o += "&quot;";
    else o += c;
  }
  return o;
}

struct Frame {
  Point2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point2 hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  double s = 1.0;
  double height = kWidth;

  void add(Point2 p) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  void fix() {
    if (!(lo.x <= hi.x)) lo = {0.0, 0.0}, hi = {1.0, 1.0};
    double w = std::max(hi.x - lo.x, 1e-12), h = std::max(hi.y - lo.y, 1e-12);
    s = (kWidth - 2 * kMargin) / w;
    height = h * s + 2 * kMargin;
  }
  std::string X(double x) const { return f6((x - lo.x) * s + kMargin); }
  std::string Y(double y) const { return f6((hi.y - y) * s + kMargin); }
};

std::array<Point2, 3> wedge(double scale) {
  return {Point2{0.0, 0.0}, scale * point_A(), scale * point_D()};
}

void polyline(std::ostringstream& out, const Frame& fr, const std::vector<Point2>& pts, const char* cls,
              bool closed) {
  out << (closed ? "<polygon" : "<polyline") << " class=\"" << cls << "\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i)
    out << (i ? " " : "") << fr.X(pts[i].x) << ',' << fr.Y(pts[i].y);
  out << "\"/>\n";
}

const char* kStyle =
    "<style>.ambient{fill:#f7f7f7;stroke:#999;stroke-width:1}"
    ".wedge{fill:none;stroke:#36c;stroke-width:1;stroke-dasharray:6 3}"
    ".obstacle{stroke:#000;stroke-width:1.2}.generator{stroke:#777;stroke-width:0.8}"
    ".disk{fill:#ccc;stroke:#555}"
    ".trapezium{fill:#fc9;fill-opacity:0.4;stroke:#c60;stroke-width:0.6}"
    ".path{fill:none;stroke:#d22;stroke-width:1.5}"
    ".curve{fill:none;stroke-width:1.5}.axis{fill:none;stroke:#000}"
    "text{font-family:sans-serif;font-size:12px}</style>\n";

}  // namespace

std::string scene_svg(const SceneFile& f, const std::vector<Polyline2>& paths) {
  const bool show_wedge =
      f.spatial() || f.kind == "segment-family" || f.kind == "triangle" || f.segments.empty();
  Frame fr;
  std::vector<Trapezium> traps;
  if (f.spatial()) {
    for (const auto& s : f.strips) traps.push_back(trapezium_of(s));
  } else {
    for (auto p : f.ambient) fr.add(p);
    for (const auto& s : f.segments) fr.add(s.a), fr.add(s.b);
    for (const auto& s : f.generators) fr.add(s.a), fr.add(s.b);
    if (f.disk) {
      fr.add(f.disk->center - Point2{f.disk->radius, f.disk->radius});
      fr.add(f.disk->center + Point2{f.disk->radius, f.disk->radius});
    }
  }
  if (show_wedge)
    for (auto p : wedge(6.0)) fr.add(p);
  for (const auto& t : traps)
    for (auto p : t.ccw()) fr.add(p);
  for (const auto& pl : paths)
    for (auto p : pl.vertices()) fr.add(p);
  fr.fix();

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f6(kWidth) << "\" height=\"" << f6(fr.height)
      << "\" viewBox=\"0 0 " << f6(kWidth) << ' ' << f6(fr.height) << "\">\n";
  out << kStyle;
  out << "<title>" << esc(f.kind) << "</title>\n";
  if (!f.spatial() && !f.ambient.empty()) polyline(out, fr, f.ambient, "ambient", true);
  if (show_wedge) {
    auto w = wedge(6.0);
    polyline(out, fr, {w.begin(), w.end()}, "wedge", true);
  }
  if (f.disk)
    out << "<circle class=\"disk\" cx=\"" << fr.X(f.disk->center.x) << "\" cy=\"" << fr.Y(f.disk->center.y)
        << "\" r=\"" << f6(f.disk->radius * fr.s) << "\"/>\n";
  for (const auto& t : traps) {
    auto c = t.ccw();
    polyline(out, fr, {c.begin(), c.end()}, "trapezium", true);
  }
  for (const auto& s : f.generators)
    out << "<line class=\"generator\" x1=\"" << fr.X(s.a.x) << "\" y1=\"" << fr.Y(s.a.y) << "\" x2=\""
        << fr.X(s.b.x) << "\" y2=\"" << fr.Y(s.b.y) << "\"/>\n";
  for (const auto& s : f.segments)
    out << "<line class=\"obstacle\" x1=\"" << fr.X(s.a.x) << "\" y1=\"" << fr.Y(s.a.y) << "\" x2=\""
        << fr.X(s.b.x) << "\" y2=\"" << fr.Y(s.b.y) << "\"/>\n";
  for (const auto& pl : paths) polyline(out, fr, pl.vertices(), "path", false);
  out << "</svg>\n";
  return out.str();
}

std::string curves_svg(const std::vector<ValueRow>& rows) {
  struct Series {
    std::string name;
    std::vector<Point2> pts;
  };
  std::vector<Series> series;
  for (const auto& r : rows) {
    auto at = r.key.find('@');
    if (at == std::string::npos) continue;
    std::string tail = r.key.substr(at + 1);
    auto eq = tail.find('=');
    std::string xs = eq == std::string::npos ? tail : tail.substr(eq + 1);
    char* end = nullptr;
    double x = std::strtod(xs.c_str(), &end);
    if (end == xs.c_str() || *end != '\0' || !std::isfinite(r.value)) continue;
    std::string name = r.id + "/" + r.key.substr(0, at) + (eq == std::string::npos ? "" : " vs " + tail.substr(0, eq));
    auto it = std::find_if(series.begin(), series.end(), [&](const Series& s) { return s.name == name; });
    if (it == series.end()) {
      series.push_back({name, {}});
      it = series.end() - 1;
    }
    it->pts.push_back({x, r.value});
  }
  if (series.empty()) throw IoError("no curve data (keys of the form name@x) in the values table");
  Frame fr;
  for (auto& s : series) {
    std::stable_sort(s.pts.begin(), s.pts.end(), [](Point2 a, Point2 b) { return a.x < b.x; });
    for (auto p : s.pts) fr.add(p);
  }
  fr.fix();
  // Keep the plot square-ish when the value range is tiny or huge.
  const double w = std::max(fr.hi.x - fr.lo.x, 1e-12), h = std::max(fr.hi.y - fr.lo.y, 1e-12);
  const double sy = (kWidth * 0.6 - 2 * kMargin) / h;
  fr.height = kWidth * 0.6 + 20.0 * series.size();
  auto X = [&](double x) { return f6((x - fr.lo.x) * (kWidth - 2 * kMargin) / w + kMargin); };
  auto Y = [&](double y) { return f6((fr.hi.y - y) * sy + kMargin); };
  static const char* colors[] = {"#d22", "#26c", "#2a2", "#c80", "#82c", "#333"};

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f6(kWidth) << "\" height=\"" << f6(fr.height)
      << "\" viewBox=\"0 0 " << f6(kWidth) << ' ' << f6(fr.height) << "\">\n";
  out << kStyle;
  out << "<rect class=\"axis\" x=\"" << f6(kMargin) << "\" y=\"" << f6(kMargin) << "\" width=\""
      << f6(kWidth - 2 * kMargin) << "\" height=\"" << f6(kWidth * 0.6 - 2 * kMargin) << "\"/>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* c = colors[i % 6];
    out << "<polyline class=\"curve\" stroke=\"" << c << "\" points=\"";
    for (std::size_t k = 0; k < series[i].pts.size(); ++k)
      out << (k ? " " : "") << X(series[i].pts[k].x) << ',' << Y(series[i].pts[k].y);
    out << "\"/>\n";
    for (auto p : series[i].pts)
      out << "<circle fill=\"" << c << "\" cx=\"" << X(p.x) << "\" cy=\"" << Y(p.y) << "\" r=\"3\"/>\n";
    out << "<text x=\"" << f6(kMargin) << "\" y=\"" << f6(kWidth * 0.6 + 14.0 + 20.0 * i) << "\" fill=\"" << c
        << "\">" << esc(series[i].name) << "</text>\n";
  }
  out << "<text x=\"" << f6(kMargin + 4) << "\" y=\"" << f6(kMargin + 14) << "\">y " << f6(fr.lo.y) << " .. "
      << f6(fr.hi.y) << ", x " << f6(fr.lo.x) << " .. " << f6(fr.hi.x) << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace bmetric
