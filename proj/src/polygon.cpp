#include "latsurf/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace latsurf {

namespace {

std::vector<Vec2i> rotate_to_min(std::vector<Vec2i> v) {
  auto it = std::min_element(v.begin(), v.end());
  std::rotate(v.begin(), it, v.end());
  return v;
}

}  // namespace

ConvexLatticePolygon::ConvexLatticePolygon(std::vector<Vec2i> vertices)
    : v_(rotate_to_min(std::move(vertices))) {
  const int n = (int)v_.size();
  if (n < 3)
    throw std::invalid_argument("polygon: need at least 3 vertices");

  double turning = 0.0;
  for (int i = 0; i < n; ++i) {
    Vec2i e0 = v_[(i + 1) % n] - v_[i];
    Vec2i e1 = v_[(i + 2) % n] - v_[(i + 1) % n];
    if (is_zero(e0))
      throw std::invalid_argument("polygon: zero-length facet");
    i64 c = cross(e0, e1);
    if (c == 0)
      throw std::invalid_argument("polygon: collinear consecutive facets");
    if (c < 0)
      throw std::invalid_argument("polygon: vertices must turn counter-clockwise");
    turning += std::atan2((double)c, (double)dot(e0, e1));
  }
  // strict left turns everywhere plus total turning 2*pi rules out
  // multiply-wound vertex cycles
  if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-6)
    throw std::invalid_argument("polygon: vertex cycle is not simple");

  for (int i = 0; i < n; ++i) {
    Vec2i a = v_[i], b = v_[(i + 1) % n];
    area2_ += cross(a, b);
    Vec2i e = b - a;
    auto dec = reduce(e);
    Vec2i nbar = perp(dec.primitive);  // outward for CCW orientation
    double len = norm(e);
    double nlen = norm(nbar);
    facets_.push_back({a, b, e, dec.g, nbar,
                       {(double)nbar.x / nlen, (double)nbar.y / nlen},
                       len, 1.0 / nlen});
  }

  delta_sq_ = Rat(0);
  bool first = true;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j == i || (j + 1) % n == i) continue;  // skip incident facets
      Rat d2 = point_segment_dist_sq(v_[i], v_[j], v_[(j + 1) % n]);
      if (first || d2 < delta_sq_) {
        delta_sq_ = d2;
        first = false;
      }
    }
  }
}

double ConvexLatticePolygon::delta() const {
  return std::sqrt(delta_sq_.to_double());
}

bool ConvexLatticePolygon::contains(Vec2i p) const {
  const int n = size();
  for (int i = 0; i < n; ++i) {
    if (cross(v_[(i + 1) % n] - v_[i], p - v_[i]) < 0) return false;
  }
  return true;
}

ConvexLatticePolygon ConvexLatticePolygon::scaled(i64 k) const {
  if (k < 1) throw std::domain_error("polygon scale factor must be >= 1");
  std::vector<Vec2i> w;
  w.reserve(v_.size());
  for (Vec2i p : v_) w.push_back(k * p);
  return ConvexLatticePolygon(std::move(w));
}

PolygonMetrics polygon_metrics(const ConvexLatticePolygon& p) {
  return {p.area2(), p.facets(), p.delta_sq(), p.delta()};
}

PickCount pick_count(const ConvexLatticePolygon& p) {
  i64 boundary = 0;
  for (const FacetData& f : p.facets()) boundary += f.edge_gcd;
  // area2 + boundary is always even, so total is an integer
  i64 total = (p.area2() + boundary) / 2 + 1;
  return {total, boundary, total - boundary};
}

ConvexLatticePolygon convex_hull(std::span<const Vec2i> points) {
  std::vector<Vec2i> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3)
    throw std::invalid_argument("convex_hull: fewer than 3 distinct points");

  auto build = [&](auto begin, auto end) {
    std::vector<Vec2i> chain;
    for (auto it = begin; it != end; ++it) {
      while (chain.size() >= 2 &&
             cross(chain.back() - chain[chain.size() - 2],
                   *it - chain.back()) <= 0)
        chain.pop_back();
      chain.push_back(*it);
    }
    return chain;
  };

  std::vector<Vec2i> lower = build(pts.begin(), pts.end());
  std::vector<Vec2i> upper = build(pts.rbegin(), pts.rend());
  lower.pop_back();
  upper.pop_back();
  lower.insert(lower.end(), upper.begin(), upper.end());
  if (lower.size() < 3)
    throw std::invalid_argument("convex_hull: points are collinear");
  return ConvexLatticePolygon(std::move(lower));
}

Rat point_segment_dist_sq(Vec2i p, Vec2i a, Vec2i b) {
  Vec2i m = b - a;
  if (is_zero(m)) return Rat(norm_sq(p - a));
  i64 t_num = dot(p - a, m);  // parameter along the segment, scaled by |m|^2
  i64 mm = norm_sq(m);
  if (t_num <= 0) return Rat(norm_sq(p - a));
  if (t_num >= mm) return Rat(norm_sq(p - b));
  i64 c = cross(m, p - a);
  return Rat((i128)c * c, (i128)mm);
}

}  // namespace latsurf
