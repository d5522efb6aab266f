#include <cmath>

#include "bmetric/error.hpp"
#include "bmetric/shortest_path.hpp"

namespace bmetric {

namespace {

double orient2(Point2 a, Point2 b, Point2 c) { return cross(b - a, c - a); }

// Taut string through a sequence of portals (left, right) from start to end.
double funnel_length(const std::vector<std::pair<Point2, Point2>>& portals, Point2 start,
                     Point2 end) {
  std::vector<std::pair<Point2, Point2>> ps;
  ps.reserve(portals.size() + 2);
  ps.push_back({start, start});
  ps.insert(ps.end(), portals.begin(), portals.end());
  ps.push_back({end, end});

  double total = 0.0;
  Point2 apex = start, left = start, right = start;
  std::size_t apex_i = 0, left_i = 0, right_i = 0;
  for (std::size_t i = 1; i < ps.size(); ++i) {
    const Point2 l = ps[i].first;
    const Point2 r = ps[i].second;
    // Right boundary moves inward when r is left of apex->right.
    if (orient2(apex, right, r) >= 0.0) {
      if (apex == right || orient2(apex, left, r) < 0.0) {
        right = r;
        right_i = i;
      } else {
        total += dist(apex, left);
        apex = left;
        apex_i = left_i;
        left = right = apex;
        left_i = right_i = apex_i;
        i = apex_i;
        continue;
      }
    }
    if (orient2(apex, left, l) <= 0.0) {
      if (apex == left || orient2(apex, right, l) > 0.0) {
        left = l;
        left_i = i;
      } else {
        total += dist(apex, right);
        apex = right;
        apex_i = right_i;
        left = right = apex;
        left_i = right_i = apex_i;
        i = apex_i;
        continue;
      }
    }
  }
  return total + dist(apex, end);
}

}  // namespace

LabyrinthBounds labyrinth_bounds(const std::vector<Point2>& spiral, int samples_per_coil,
                                 bool with_upper) {
  if (samples_per_coil < 3) throw ParameterError("need at least 3 samples per coil");
  const std::size_t n = static_cast<std::size_t>(samples_per_coil);
  LabyrinthBounds out;
  if (spiral.size() < n + 1) return out;
  const std::size_t count = spiral.size() - n;  // portals 0 .. count-1
  out.portals = count;
  for (std::size_t i = 0; i + 1 < count; ++i)
    out.lower += segment_distance(spiral[i], spiral[i + n], spiral[i + 1], spiral[i + 1 + n]);
  if (with_upper && count >= 2) {
    // Walking counter-clockwise the inner wall is on the left.
    std::vector<std::pair<Point2, Point2>> portals;
    portals.reserve(count);
    for (std::size_t i = 1; i + 1 < count; ++i) portals.push_back({spiral[i + n], spiral[i]});
    Point2 s = (spiral[0] + spiral[n]) * 0.5;
    Point2 e = (spiral[count - 1] + spiral[count - 1 + n]) * 0.5;
    out.upper = funnel_length(portals, s, e);
  }
  return out;
}

}  // namespace bmetric
