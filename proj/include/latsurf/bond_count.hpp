#pragma once

#include <vector>

#include "latsurf/polygon.hpp"
#include "latsurf/region.hpp"

namespace latsurf {

// 1 when the bond direction w points out of the wedge between the outward
// facet normals n (following the vertex) and m (preceding it), i.e. when
// dot(w, n) * dot(w, m) < 0; otherwise 0.  Exact integer arithmetic.
int sector_indicator(Vec2i w, Vec2i n, Vec2i m);

// Triangle swept next to a vertex by bonds parallel to w: vertices 0, w and
// the rational point q with dot(q, n) == 0 and dot(q - w, m) == 0.  The
// (alpha, beta, k) form is the shear-normalized shape handed to
// staircase_sum; k is the number of lattice steps along w.
struct CornerTriangle {
  RatPoint q;
  Rat alpha;
  Rat beta;
  i64 k = 1;
};
CornerTriangle corner_triangle(Vec2i w, Vec2i n, Vec2i m);

// Number of lattice points strictly inside the triangle with vertices
// (0, 0), (0, k) and (alpha, beta), evaluated in closed form with
// floor/ceiling sums (no enumeration).  Degenerate alpha == 0 gives 0.
i64 staircase_sum(const Rat& alpha, const Rat& beta, i64 k);

// Lattice points strictly inside corner_triangle(w, n, m).  Requires
// sector_indicator(w, n, m) == 1 and non-parallel normals.
i64 triangle_interior_count(Vec2i w, Vec2i n, Vec2i m);

// Number of lattice points x in p whose bond partner x + w lies outside p.
// Closed form from facet data; no enumeration.
i64 outward_crossing_count(const ConvexLatticePolygon& p, Vec2i w);

// Number of bonds x -> x + w with both endpoints outside p whose segment
// still meets p.  Such bonds clip single vertices, which requires the bond
// to be shorter than the vertex clearance: |w| < delta(p), checked exactly.
i64 straddle_count(const ConvexLatticePolygon& p, Vec2i w);

// Number of bonds x -> x + w with both endpoints in p, in closed form.
// Valid (and checked) only for |w| < delta(p); longer bonds need
// bond_number_brute.
i64 bond_number(const ConvexLatticePolygon& p, Vec2i w);

// Same count by direct enumeration over column spans; works for any region
// and any nonzero w.
i64 bond_number_brute(const ConvexRegion& region, Vec2i w);
i64 bond_number_brute(const std::vector<ColumnSpan>& spans, Vec2i w);

}  // namespace latsurf
