#pragma once

#include <span>
#include <vector>

#include "latsurf/lattice.hpp"

namespace latsurf {

// One facet of a convex lattice polygon, walked counter-clockwise.
struct FacetData {
  Vec2i a, b;            // endpoints, b follows a in CCW order
  Vec2i edge;            // b - a
  i64 edge_gcd;          // number of lattice steps along the facet
  Vec2i miller_normal;   // outward normal with coprime integer components
  Vec2d unit_normal;     // miller_normal / |miller_normal|
  double length;         // |edge|
  double lattice_spacing;  // distance between consecutive lattice lines
                           // parallel to the facet: 1 / |miller_normal|
};

// Closed convex polygon with lattice-point vertices, stored counter-clockwise
// starting from the lexicographically smallest vertex.  Construction rejects
// repeated vertices, collinear triples, clockwise input and self-intersection.
class ConvexLatticePolygon {
 public:
  explicit ConvexLatticePolygon(std::vector<Vec2i> vertices);

  int size() const { return (int)v_.size(); }
  const std::vector<Vec2i>& vertices() const { return v_; }
  Vec2i vertex(int i) const { return v_[((i % size()) + size()) % size()]; }

  i64 area2() const { return area2_; }  // twice the enclosed area

  const std::vector<FacetData>& facets() const { return facets_; }

  // Minimum distance from a vertex to a facet it does not belong to,
  // kept as an exact squared rational; delta() is for display only.
  const Rat& delta_sq() const { return delta_sq_; }
  double delta() const;

  bool contains(Vec2i p) const;  // boundary inclusive, exact

  ConvexLatticePolygon scaled(i64 k) const;

  friend bool operator==(const ConvexLatticePolygon& a,
                         const ConvexLatticePolygon& b) {
    return a.v_ == b.v_;
  }

 private:
  std::vector<Vec2i> v_;
  std::vector<FacetData> facets_;
  i64 area2_ = 0;
  Rat delta_sq_;
};

struct PolygonMetrics {
  i64 area2;
  std::vector<FacetData> facets;
  Rat delta_sq;
  double delta;
};

PolygonMetrics polygon_metrics(const ConvexLatticePolygon& p);

struct PickCount {
  i64 total;     // lattice points in the closed polygon
  i64 boundary;  // lattice points on the boundary
  i64 interior;
};

// Counts lattice points from area and boundary data alone (no enumeration).
PickCount pick_count(const ConvexLatticePolygon& p);

// Strict convex hull (collinear boundary points dropped).  Throws if the
// points do not span a 2-dimensional hull.
ConvexLatticePolygon convex_hull(std::span<const Vec2i> points);

// Exact squared distance from point p to segment [a, b].
Rat point_segment_dist_sq(Vec2i p, Vec2i a, Vec2i b);

}  // namespace latsurf
