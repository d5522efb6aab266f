#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "bmetric/geom.hpp"
#include "bmetric/polyline.hpp"

namespace bmetric {

struct Disk {
  Point2 center;
  double radius = 0.0;
};

// Angular interval [start, start + width] of directions at a point.
struct Sector {
  double start = 0.0;
  double width = 2.0 * kPi;

  bool full() const { return width >= 2.0 * kPi; }
  bool contains(Point2 dir) const;
  Point2 bisector() const { return unit(start + 0.5 * width); }
};

// Planar scene: a simple polygon (the ambient domain), closed segment
// obstacles and an optional closed disk. Obstacle endpoints on or inside the
// disk are sealed: paths may not pass through them.
class Scene2D {
 public:
  Scene2D(std::vector<Point2> ambient, std::vector<Segment2> obstacles,
          std::optional<Disk> disk = std::nullopt);

  static Scene2D box(Point2 lo, Point2 hi, std::vector<Segment2> obstacles = {});

  const std::vector<Point2>& ambient() const { return ambient_; }
  const std::vector<Segment2>& obstacles() const { return obstacles_; }
  const std::optional<Disk>& disk() const { return disk_; }
  const std::vector<Point2>& sealed_points() const { return sealed_; }

  double scale() const { return scale_; }
  double eps() const { return 1e-12 * scale_; }
  Point2 centroid() const;
  std::pair<Point2, Point2> bbox() const { return {lo_, hi_}; }

  bool inside_ambient(Point2 p) const;
  bool in_open_disk(Point2 p) const;
  bool on_circle(Point2 p) const;
  bool is_sealed(Point2 p) const;
  bool on_obstacle(Point2 p) const;
  // On an obstacle but not at one of its endpoints.
  bool on_obstacle_interior(Point2 p) const;
  // Closed ambient, outside the open disk, not on an obstacle.
  bool is_free(Point2 p) const;
  // Any obstacle, ambient edge or the circle passes through p.
  bool is_boundary(Point2 p) const;

  // Directions at p that lead into free space, one sector per connected
  // component of a small punctured neighbourhood.
  std::vector<Sector> free_sectors(Point2 p) const;

  // Straight motion from p to q, ignoring the local direction constraints at
  // p and q themselves.
  bool segment_free(Point2 p, Point2 q) const;
  bool edge_valid(Point2 p, const Sector& sp, Point2 q, const Sector& sq) const;
  // Counter-clockwise arc of the disk boundary from angle theta0, given width.
  bool arc_free(double theta0, double width) const;

 private:
  bool blocked_by_touch(Point2 p, Point2 q, std::vector<double>& ts) const;

  std::vector<Point2> ambient_;
  std::vector<Segment2> obstacles_;
  std::optional<Disk> disk_;
  std::vector<Point2> sealed_;
  std::vector<Point2> features_;
  std::vector<std::vector<Sector>> feature_sectors_;
  Point2 lo_, hi_;
  double scale_ = 1.0;
};

struct ShortestPath {
  Polyline2 path;        // arcs appear as circumscribed chains
  double length = 0.0;   // exact length, arcs counted as arcs
};

// Visibility graph over obstacle endpoints, ambient vertices and disk tangent
// points. Build once, query many times.
class VisibilityGraph {
 public:
  explicit VisibilityGraph(Scene2D scene);

  const Scene2D& scene() const { return scene_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const;

  // Throws DomainError for invalid query points, UnreachableError when no
  // path exists.
  ShortestPath query(Point2 a, Point2 b) const;
  std::optional<ShortestPath> try_query(Point2 a, Point2 b) const;
  // Shortest connection from any source to any target.
  std::optional<ShortestPath> query_sets(const std::vector<Point2>& sources,
                                         const std::vector<Point2>& targets) const;

 private:
  struct Node {
    Point2 p;
    Sector sector;
    bool on_circle = false;
    double theta = 0.0;
  };
  struct Edge {
    int to = 0;
    double w = 0.0;
    int arc = 0;  // +1 counter-clockwise arc, -1 clockwise, 0 straight
  };

  void add_nodes_at(Point2 p, std::vector<Node>& out) const;
  void add_tangent_nodes(Point2 p, std::vector<Node>& out) const;
  bool node_edge_valid(const Node& u, const Node& v) const;
  std::optional<Edge> arc_edge(const Node& u, int u_id, const Node& v, int v_id) const;
  void validate_query(Point2 p) const;
  std::vector<Point2> expand_arc(const Node& from, int dir, double width) const;

  Scene2D scene_;
  std::vector<Node> nodes_;
  std::vector<std::vector<Edge>> adj_;
};

// Exact Euclidean shortest path in the closure of the free space.
ShortestPath shortest_path_2d(const Scene2D& scene, Point2 a, Point2 b);

// Independent baseline: 8-connected lattice of spacing h, with a and b
// joined to visible lattice nodes within distance 2h.
ShortestPath grid_path_2d(const Scene2D& scene, Point2 a, Point2 b, double h);

// Corridor between consecutive coils of a sampled spiral (plane coordinates,
// samples_per_coil samples per turn, counter-clockwise). Portal i is the
// radial gap [s_i, s_{i+n}]. lower is the sum of distances between
// consecutive portals, upper the taut string between the end portals.
struct LabyrinthBounds {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t portals = 0;
};

LabyrinthBounds labyrinth_bounds(const std::vector<Point2>& spiral, int samples_per_coil,
                                 bool with_upper = true);

}  // namespace bmetric
