#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>

#include "bmetric/error.hpp"
#include "bmetric/shortest_path.hpp"

namespace bmetric {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Angular spacing of the chains that stand in for arcs in returned paths.
constexpr double kArcStep = kPi / 360.0;

struct QueueItem {
  double d;
  int id;
  bool operator>(const QueueItem& o) const { return d != o.d ? d > o.d : id > o.id; }
};

}  // namespace

VisibilityGraph::VisibilityGraph(Scene2D scene) : scene_(std::move(scene)) {
  std::vector<Point2> base;
  auto push_unique = [&](Point2 p) {
    for (const auto& b : base)
      if (b == p) return;
    base.push_back(p);
  };
  for (const auto& v : scene_.ambient()) push_unique(v);
  for (const auto& s : scene_.obstacles()) {
    push_unique(s.a);
    push_unique(s.b);
  }
  for (const auto& p : base) {
    if (!scene_.inside_ambient(p) || scene_.in_open_disk(p) || scene_.is_sealed(p)) continue;
    add_nodes_at(p, nodes_);
  }
  if (scene_.disk()) {
    std::size_t n = nodes_.size();
    for (std::size_t i = 0; i < n; ++i) {
      bool seen = false;
      for (std::size_t j = 0; j < i; ++j)
        if (nodes_[j].p == nodes_[i].p) seen = true;
      if (!seen) add_tangent_nodes(nodes_[i].p, nodes_);
    }
  }

  adj_.assign(nodes_.size(), {});
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes_.size(); ++j) {
      if (!node_edge_valid(nodes_[i], nodes_[j])) continue;
      double w = dist(nodes_[i].p, nodes_[j].p);
      adj_[i].push_back({static_cast<int>(j), w, 0});
      adj_[j].push_back({static_cast<int>(i), w, 0});
    }
  }
  if (scene_.disk()) {
    std::vector<int> circ;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (nodes_[i].on_circle) circ.push_back(static_cast<int>(i));
    std::sort(circ.begin(), circ.end(),
              [&](int a, int b) { return nodes_[a].theta < nodes_[b].theta; });
    for (std::size_t i = 0; i < circ.size() && circ.size() > 1; ++i) {
      int u = circ[i];
      int v = circ[(i + 1) % circ.size()];
      if (auto e = arc_edge(nodes_[u], u, nodes_[v], v)) {
        adj_[u].push_back(*e);
        adj_[v].push_back({u, e->w, -1});
      }
    }
  }
}

std::size_t VisibilityGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& a : adj_) n += a.size();
  return n / 2;
}

void VisibilityGraph::add_nodes_at(Point2 p, std::vector<Node>& out) const {
  bool circle = scene_.on_circle(p);
  double theta = circle ? wrap_angle(angle_of(p - scene_.disk()->center)) : 0.0;
  for (const auto& s : scene_.free_sectors(p)) out.push_back({p, s, circle, theta});
}

void VisibilityGraph::add_tangent_nodes(Point2 p, std::vector<Node>& out) const {
  const Disk& disk = *scene_.disk();
  Point2 v = p - disk.center;
  double d = norm(v);
  if (d <= disk.radius * (1.0 + 1e-12)) return;
  double base = angle_of(v);
  double beta = std::acos(disk.radius / d);
  for (double sgn : {1.0, -1.0}) {
    double th = wrap_angle(base + sgn * beta);
    Point2 t = disk.center + unit(th) * disk.radius;
    if (!scene_.inside_ambient(t) || scene_.is_sealed(t)) continue;
    bool dup = false;
    for (const auto& n : out)
      if (n.on_circle && std::abs(n.theta - th) <= 1e-13) dup = true;
    if (dup) continue;
    for (const auto& s : scene_.free_sectors(t)) out.push_back({t, s, true, th});
  }
}

bool VisibilityGraph::node_edge_valid(const Node& u, const Node& v) const {
  if (u.p == v.p) return false;
  return scene_.edge_valid(u.p, u.sector, v.p, v.sector);
}

std::optional<VisibilityGraph::Edge> VisibilityGraph::arc_edge(const Node& u, int, const Node& v,
                                                               int v_id) const {
  double width = wrap_angle(v.theta - u.theta);
  if (width <= 0.0) return std::nullopt;
  if (!scene_.arc_free(u.theta, width)) return std::nullopt;
  return Edge{v_id, width * scene_.disk()->radius, 1};
}

void VisibilityGraph::validate_query(Point2 p) const {
  if (!is_finite(p)) throw DomainError("query point is not finite");
  if (!scene_.inside_ambient(p)) throw DomainError("query point lies outside the ambient domain");
  if (scene_.in_open_disk(p)) throw DomainError("query point lies inside the disk");
  if (scene_.is_sealed(p)) throw DomainError("query point is a sealed obstacle endpoint");
  if (scene_.on_obstacle_interior(p)) throw DomainError("query point lies on an obstacle");
}

std::vector<Point2> VisibilityGraph::expand_arc(const Node& from, int dir, double width) const {
  const Disk& disk = *scene_.disk();
  int m = std::max(1, static_cast<int>(std::ceil(width / kArcStep)));
  double step = width / m;
  // Vertices on a slightly larger circle so every chord is tangent to the disk.
  double rr = disk.radius / std::cos(0.5 * step);
  std::vector<Point2> pts;
  for (int i = 0; i < m; ++i)
    pts.push_back(disk.center + unit(from.theta + dir * (0.5 + i) * step) * rr);
  return pts;
}

std::optional<ShortestPath> VisibilityGraph::query_sets(const std::vector<Point2>& sources,
                                                        const std::vector<Point2>& targets) const {
  for (const auto& p : sources) validate_query(p);
  for (const auto& p : targets) validate_query(p);
  for (const auto& s : sources)
    for (const auto& t : targets)
      if (s == t) return ShortestPath{Polyline2(std::vector<Point2>{s}), 0.0};

  const int nb = static_cast<int>(nodes_.size());
  std::vector<Node> extra;
  std::vector<char> is_source, is_target;
  auto add_query = [&](Point2 p, bool src) {
    std::size_t before = extra.size();
    add_nodes_at(p, extra);
    for (std::size_t i = before; i < extra.size(); ++i) {
      is_source.push_back(src);
      is_target.push_back(!src);
    }
  };
  for (const auto& s : sources) add_query(s, true);
  for (const auto& t : targets) add_query(t, false);
  if (scene_.disk()) {
    std::vector<Point2> qpts(sources);
    qpts.insert(qpts.end(), targets.begin(), targets.end());
    for (const auto& q : qpts) {
      std::vector<Node> tmp;
      add_tangent_nodes(q, tmp);
      for (const auto& n : tmp) {
        extra.push_back(n);
        is_source.push_back(false);
        is_target.push_back(false);
      }
    }
  }
  const int ne = static_cast<int>(extra.size());
  const int total = nb + ne;
  std::vector<std::vector<Edge>> extra_adj(ne);
  std::vector<std::vector<Edge>> base_extra(nb);

  auto node = [&](int id) -> const Node& { return id < nb ? nodes_[id] : extra[id - nb]; };

  for (int i = 0; i < ne; ++i) {
    for (int j = 0; j < nb; ++j) {
      if (!node_edge_valid(extra[i], nodes_[j])) continue;
      double w = dist(extra[i].p, nodes_[j].p);
      extra_adj[i].push_back({j, w, 0});
      base_extra[j].push_back({nb + i, w, 0});
    }
    for (int j = i + 1; j < ne; ++j) {
      if (!node_edge_valid(extra[i], extra[j])) continue;
      double w = dist(extra[i].p, extra[j].p);
      extra_adj[i].push_back({nb + j, w, 0});
      extra_adj[j].push_back({nb + i, w, 0});
    }
  }
  if (scene_.disk()) {
    std::vector<int> circ;
    for (int id = 0; id < total; ++id)
      if (node(id).on_circle) circ.push_back(id);
    std::stable_sort(circ.begin(), circ.end(),
                     [&](int a, int b) { return node(a).theta < node(b).theta; });
    const int m = static_cast<int>(circ.size());
    for (int i = 0; i < m && m > 1; ++i) {
      int u = circ[i];
      int v = circ[(i + 1) % m];
      if (u < nb && v < nb) continue;  // already in the base graph
      if (auto e = arc_edge(node(u), u, node(v), v)) {
        auto& au = u < nb ? base_extra[u] : extra_adj[u - nb];
        auto& av = v < nb ? base_extra[v] : extra_adj[v - nb];
        au.push_back(*e);
        av.push_back({u, e->w, -1});
      }
    }
  }

  std::vector<double> dist_to(total, kInf);
  std::vector<int> prev(total, -1);
  std::vector<int> prev_arc(total, 0);
  std::vector<double> prev_w(total, 0.0);
  std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>> pq;
  for (int i = 0; i < ne; ++i)
    if (is_source[i]) {
      dist_to[nb + i] = 0.0;
      pq.push({0.0, nb + i});
    }
  int reached = -1;
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist_to[u]) continue;
    if (u >= nb && is_target[u - nb]) {
      reached = u;
      break;
    }
    auto relax = [&](const Edge& e) {
      double nd = d + e.w;
      if (nd < dist_to[e.to] || (nd == dist_to[e.to] && u < prev[e.to])) {
        dist_to[e.to] = nd;
        prev[e.to] = u;
        prev_arc[e.to] = e.arc;
        prev_w[e.to] = e.w;
        pq.push({nd, e.to});
      }
    };
    if (u < nb) {
      for (const auto& e : adj_[u]) relax(e);
      for (const auto& e : base_extra[u]) relax(e);
    } else {
      for (const auto& e : extra_adj[u - nb]) relax(e);
    }
  }
  if (reached < 0) return std::nullopt;

  std::vector<int> chain;
  for (int v = reached; v >= 0; v = prev[v]) chain.push_back(v);
  std::reverse(chain.begin(), chain.end());
  std::vector<Point2> pts{node(chain.front()).p};
  for (std::size_t i = 1; i < chain.size(); ++i) {
    if (prev_arc[chain[i]] != 0) {
      auto arc = expand_arc(node(chain[i - 1]), prev_arc[chain[i]],
                            prev_w[chain[i]] / scene_.disk()->radius);
      pts.insert(pts.end(), arc.begin(), arc.end());
    }
    pts.push_back(node(chain[i]).p);
  }
  return ShortestPath{Polyline2::from_points(pts), dist_to[reached]};
}

std::optional<ShortestPath> VisibilityGraph::try_query(Point2 a, Point2 b) const {
  return query_sets({a}, {b});
}

ShortestPath VisibilityGraph::query(Point2 a, Point2 b) const {
  auto r = try_query(a, b);
  if (!r) throw UnreachableError("target is not reachable from the source");
  return *r;
}

ShortestPath shortest_path_2d(const Scene2D& scene, Point2 a, Point2 b) {
  return VisibilityGraph(scene).query(a, b);
}

}  // namespace bmetric
