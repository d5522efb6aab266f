#include <cmath>
#include <functional>
#include <limits>
#include <queue>

#include "bmetric/error.hpp"
#include "bmetric/shortest_path.hpp"

namespace bmetric {

ShortestPath grid_path_2d(const Scene2D& scene, Point2 a, Point2 b, double h) {
  if (!(h > 0.0)) throw ParameterError("grid resolution must be positive");
  for (Point2 p : {a, b}) {
    if (!scene.inside_ambient(p) || scene.in_open_disk(p) || scene.on_obstacle_interior(p) ||
        scene.is_sealed(p))
      throw DomainError("grid query point is not a free point");
  }
  if (a == b) return {Polyline2(std::vector<Point2>{a}), 0.0};

  auto [lo, hi] = scene.bbox();
  const int nx = static_cast<int>(std::floor((hi.x - lo.x) / h)) + 1;
  const int ny = static_cast<int>(std::floor((hi.y - lo.y) / h)) + 1;
  if (static_cast<double>(nx) * ny > 2e7) throw ParameterError("grid resolution too fine");
  const int n = nx * ny;
  const int ia = n;      // source id
  const int ib = n + 1;  // target id

  auto pos = [&](int id) -> Point2 {
    if (id == ia) return a;
    if (id == ib) return b;
    return {lo.x + (id % nx) * h, lo.y + (id / nx) * h};
  };

  // Lattice points on the ambient boundary keep their sectors; interior
  // lattice points use the full turn.
  std::vector<signed char> state(n, -1);  // -1 unknown, 0 blocked, 1 free
  std::vector<std::vector<Sector>> boundary_sectors;
  std::vector<int> sector_slot(n, -1);
  auto usable = [&](int id) {
    if (state[id] >= 0) return state[id] == 1;
    Point2 p = pos(id);
    bool ok = scene.inside_ambient(p) && !scene.in_open_disk(p) && !scene.on_obstacle(p) &&
              !scene.is_sealed(p);
    if (ok && scene.is_boundary(p)) {
      sector_slot[id] = static_cast<int>(boundary_sectors.size());
      boundary_sectors.push_back(scene.free_sectors(p));
      ok = !boundary_sectors.back().empty();
    }
    state[id] = ok ? 1 : 0;
    return ok;
  };
  std::vector<Sector> sa = scene.free_sectors(a);
  std::vector<Sector> sb = scene.free_sectors(b);
  const std::vector<Sector> full{Sector{}};
  auto sectors = [&](int id) -> const std::vector<Sector>& {
    if (id == ia) return sa;
    if (id == ib) return sb;
    return sector_slot[id] >= 0 ? boundary_sectors[sector_slot[id]] : full;
  };
  auto valid = [&](int u, int v) {
    Point2 p = pos(u);
    Point2 q = pos(v);
    if (p == q) return false;
    Point2 d = q - p;
    bool dir_ok = false;
    for (const auto& s : sectors(u))
      if (s.contains(d)) dir_ok = true;
    if (!dir_ok) return false;
    dir_ok = false;
    for (const auto& s : sectors(v))
      if (s.contains(-d)) dir_ok = true;
    return dir_ok && scene.segment_free(p, q);
  };

  auto near_ids = [&](Point2 p) {
    std::vector<int> out;
    int cx = static_cast<int>(std::floor((p.x - lo.x) / h));
    int cy = static_cast<int>(std::floor((p.y - lo.y) / h));
    for (int j = cy - 2; j <= cy + 3; ++j)
      for (int i = cx - 2; i <= cx + 3; ++i) {
        if (i < 0 || j < 0 || i >= nx || j >= ny) continue;
        int id = j * nx + i;
        if (dist(pos(id), p) <= 2.0 * h && usable(id)) out.push_back(id);
      }
    return out;
  };
  std::vector<int> near_b = near_ids(b);
  std::vector<char> links_b(n, 0);
  for (int id : near_b) links_b[id] = 1;

  std::vector<double> d(n + 2, std::numeric_limits<double>::infinity());
  std::vector<int> prev(n + 2, -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  d[ia] = 0.0;
  pq.push({0.0, ia});
  auto relax = [&](int u, int v) {
    double nd = d[u] + dist(pos(u), pos(v));
    if (nd < d[v]) {
      d[v] = nd;
      prev[v] = u;
      pq.push({nd, v});
    }
  };
  while (!pq.empty()) {
    auto [du, u] = pq.top();
    pq.pop();
    if (du > d[u]) continue;
    if (u == ib) break;
    if (u == ia) {
      for (int id : near_ids(a))
        if (valid(ia, id)) relax(ia, id);
      if (dist(a, b) <= 2.0 * h && valid(ia, ib)) relax(ia, ib);
      continue;
    }
    int i = u % nx;
    int j = u / nx;
    for (int dj = -1; dj <= 1; ++dj)
      for (int di = -1; di <= 1; ++di) {
        if (di == 0 && dj == 0) continue;
        int ii = i + di, jj = j + dj;
        if (ii < 0 || jj < 0 || ii >= nx || jj >= ny) continue;
        int v = jj * nx + ii;
        if (!usable(v) || d[u] + h >= d[v]) continue;
        if (valid(u, v)) relax(u, v);
      }
    if (links_b[u] && valid(u, ib)) relax(u, ib);
  }
  if (!std::isfinite(d[ib])) throw UnreachableError("grid target is not reachable");
  std::vector<Point2> pts;
  for (int v = ib; v >= 0; v = prev[v]) pts.push_back(pos(v));
  std::reverse(pts.begin(), pts.end());
  return {Polyline2::from_points(pts), d[ib]};
}

}  // namespace bmetric
