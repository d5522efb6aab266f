#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "bmetric/error.hpp"
#include "bmetric/geom.hpp"

namespace bmetric {

// Finite polyline with an arc-length index. Consecutive vertices are distinct;
// a single vertex is allowed and denotes the constant path.
template <class P>
class Polyline {
 public:
  Polyline() : v_{P{}}, cum_{0.0} {}

  explicit Polyline(std::vector<P> vertices) : v_(std::move(vertices)) {
    if (v_.empty()) throw DomainError("polyline needs at least one vertex");
    for (std::size_t i = 0; i < v_.size(); ++i) {
      if (!is_finite(v_[i])) throw DomainError("polyline vertex is not finite");
      if (i > 0 && v_[i] == v_[i - 1])
        throw DomainError("polyline has repeated consecutive vertices");
    }
    index();
  }

  // Drops repeated consecutive vertices before validating.
  static Polyline from_points(const std::vector<P>& pts) {
    std::vector<P> out;
    out.reserve(pts.size());
    for (const P& p : pts)
      if (out.empty() || !(out.back() == p)) out.push_back(p);
    return Polyline(std::move(out));
  }

  const std::vector<P>& vertices() const { return v_; }
  std::size_t size() const { return v_.size(); }
  const P& operator[](std::size_t i) const { return v_[i]; }
  const P& front() const { return v_.front(); }
  const P& back() const { return v_.back(); }

  double length() const { return cum_.back(); }
  // Arc length from the first vertex to vertex i.
  double arclength_at(std::size_t i) const { return cum_[i]; }

  // Point at arc length s, clamped to [0, length()].
  P point_at(double s) const {
    if (v_.size() == 1 || s <= 0.0) return v_.front();
    if (s >= cum_.back()) return v_.back();
    auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
    std::size_t i = static_cast<std::size_t>(it - cum_.begin());
    double seg = cum_[i] - cum_[i - 1];
    double t = (s - cum_[i - 1]) / seg;
    return v_[i - 1] + (v_[i] - v_[i - 1]) * t;
  }

  // Sub-path between arc lengths s <= t.
  Polyline slice(double s, double t) const {
    std::vector<P> out{point_at(s)};
    for (std::size_t i = 0; i < v_.size(); ++i)
      if (cum_[i] > s && cum_[i] < t) out.push_back(v_[i]);
    out.push_back(point_at(t));
    return from_points(out);
  }

  Polyline reversed() const {
    std::vector<P> r(v_.rbegin(), v_.rend());
    return Polyline(std::move(r));
  }

 private:
  void index() {
    cum_.assign(v_.size(), 0.0);
    for (std::size_t i = 1; i < v_.size(); ++i) cum_[i] = cum_[i - 1] + dist(v_[i - 1], v_[i]);
  }

  std::vector<P> v_;
  std::vector<double> cum_;
};

using Polyline2 = Polyline<Point2>;
using Polyline3 = Polyline<Point3>;

template <class P>
double polyline_length(const Polyline<P>& p) {
  return p.length();
}

}  // namespace bmetric
