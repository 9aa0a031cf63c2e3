#pragma once
// Shared helpers for the test binaries: seeded RNG, random geometry/model
// generators, and independent brute-force oracles that the library results
// are checked against.  The oracles deliberately use the most direct
// definition available (full-box enumeration, exact rational predicates) so
// they share no code path with the implementations under test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "latsurf/bond_count.hpp"
#include "latsurf/deformation.hpp"
#include "latsurf/energy.hpp"
#include "latsurf/lattice.hpp"
#include "latsurf/polygon.hpp"
#include "latsurf/potential.hpp"
#include "latsurf/region.hpp"

namespace latsurf::test {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline i64 rand_int(std::mt19937_64& g, i64 lo, i64 hi) {
  return std::uniform_int_distribution<i64>(lo, hi)(g);
}

inline double rand_real(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

// Convex hull of a handful of random grid points; retried until the hull is a
// genuine polygon with a vertex count in [3, max_vertices].
inline ConvexLatticePolygon random_polygon(std::mt19937_64& g, i64 coord_max,
                                           int max_vertices = 10) {
  for (;;) {
    int n = (int)rand_int(g, 3, 12);
    std::vector<Vec2i> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i)
      pts.push_back({rand_int(g, 0, coord_max), rand_int(g, 0, coord_max)});
    try {
      ConvexLatticePolygon p = convex_hull(pts);
      if ((int)p.size() <= max_vertices) return p;
    } catch (const std::exception&) {
      // collinear or degenerate draw; try again
    }
  }
}

inline ConvexLatticePolygon square_polygon(i64 m) {
  return ConvexLatticePolygon({{0, 0}, {m, 0}, {m, m}, {0, m}});
}

inline DeformationGradient random_deformation(std::mt19937_64& g) {
  double a = rand_real(g, 0, 2 * M_PI), b = rand_real(g, 0, 2 * M_PI);
  double s1 = rand_real(g, 0.75, 1.35), s2 = rand_real(g, 0.75, 1.35);
  double ca = std::cos(a), sa = std::sin(a), cb = std::cos(b),
         sb = std::sin(b);
  // rotation(a) * diag(s1, s2) * rotation(b)
  return DeformationGradient(ca * s1 * cb - sa * s2 * sb,
                             -ca * s1 * sb - sa * s2 * cb,
                             sa * s1 * cb + ca * s2 * sb,
                             -sa * s1 * sb + ca * s2 * cb);
}

// Finite bond table whose longest bond fits strictly inside the given squared
// length bound; values are nonzero constants.  Returns an empty optional-like
// flag via the bool when no candidate bond fits.
inline bool random_table_within(std::mt19937_64& g, const Rat& delta_sq,
                                std::vector<TableEntry>& out) {
  // one representative per +-w pair; symmetrize supplies the mirror
  std::vector<Vec2i> candidates;
  for (i64 x = 0; x <= 3; ++x)
    for (i64 y = -3; y <= 3; ++y) {
      Vec2i w{x, y};
      if (x == 0 && y <= 0) continue;
      if (Rat(norm_sq(w)) < delta_sq) candidates.push_back(w);
    }
  if (candidates.empty()) return false;
  std::shuffle(candidates.begin(), candidates.end(), g);
  int take = (int)rand_int(g, 1, std::min<i64>(6, (i64)candidates.size()));
  out.clear();
  for (int i = 0; i < take; ++i) {
    double v = rand_real(g, 0.1, 2.0) * (rand_int(g, 0, 1) ? 1 : -1);
    out.push_back({candidates[i], ConstantTerm{v}});
  }
  return true;
}

// Nearest-neighbour table with constant bond value `v` on (+-1,0), (0,+-1).
inline FiniteTable nn_table(double v = -1.0) {
  return FiniteTable({{{1, 0}, ConstantTerm{v}},
                      {{-1, 0}, ConstantTerm{v}},
                      {{0, 1}, ConstantTerm{v}},
                      {{0, -1}, ConstantTerm{v}}});
}

// Nearest plus diagonal neighbours.
inline FiniteTable nn_nnn_table(double v1 = -1.0, double v2 = -0.25) {
  return FiniteTable({{{1, 0}, ConstantTerm{v1}},
                      {{0, 1}, ConstantTerm{v1}},
                      {{1, 1}, ConstantTerm{v2}},
                      {{1, -1}, ConstantTerm{v2}}},
                     /*symmetrize=*/true);
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

// Lattice points of a polygon counted by plain bounding-box enumeration with
// the exact point-in-polygon predicate.
inline i64 oracle_polygon_count(const ConvexLatticePolygon& p) {
  i64 x0 = p.vertex(0).x, x1 = x0, y0 = p.vertex(0).y, y1 = y0;
  for (const Vec2i& v : p.vertices()) {
    x0 = std::min(x0, v.x);
    x1 = std::max(x1, v.x);
    y0 = std::min(y0, v.y);
    y1 = std::max(y1, v.y);
  }
  i64 acc = 0;
  for (i64 x = x0; x <= x1; ++x)
    for (i64 y = y0; y <= y1; ++y)
      if (p.contains({x, y})) ++acc;
  return acc;
}

// Number of lattice points strictly inside the triangle with vertices
// (0,0), w, q where q is the exit point used by the corner construction.
// Pure rational arithmetic: orientation sign tests against all three edges.
inline i64 oracle_corner_triangle_count(Vec2i w, Vec2i n, Vec2i m) {
  CornerTriangle tri = corner_triangle(w, n, m);
  RatPoint A{Rat(0), Rat(0)};
  RatPoint B = to_rat(w);
  RatPoint C = tri.q;
  Rat orient = cross(B - A, C - A);
  if (orient.is_zero()) return 0;  // degenerate: open triangle is empty
  int s = orient.sign();
  auto strictly_inside = [&](const RatPoint& p) {
    Rat c1 = cross(B - A, p - A);
    Rat c2 = cross(C - B, p - B);
    Rat c3 = cross(A - C, p - C);
    return c1.sign() == s && c2.sign() == s && c3.sign() == s;
  };
  auto lo_of = [](Rat a, Rat b, Rat c) {
    Rat m1 = a < b ? a : b;
    return (m1 < c ? m1 : c).floor();
  };
  auto hi_of = [](Rat a, Rat b, Rat c) {
    Rat m1 = a < b ? b : a;
    return (m1 < c ? c : m1).ceil();
  };
  i64 x0 = (i64)lo_of(A.x, B.x, C.x), x1 = (i64)hi_of(A.x, B.x, C.x);
  i64 y0 = (i64)lo_of(A.y, B.y, C.y), y1 = (i64)hi_of(A.y, B.y, C.y);
  i64 acc = 0;
  for (i64 x = x0; x <= x1; ++x)
    for (i64 y = y0; y <= y1; ++y)
      if (strictly_inside(RatPoint{Rat(x), Rat(y)})) ++acc;
  return acc;
}

// Hull-difference oracle: translating the polygon by w sweeps exactly the
// points counted as outward crossings, so the count equals the lattice points
// gained by taking the hull of P together with P + w.
inline i64 oracle_outward_crossing(const ConvexLatticePolygon& p, Vec2i w) {
  std::vector<Vec2i> pts;
  for (const Vec2i& v : p.vertices()) {
    pts.push_back(v);
    pts.push_back(v + w);
  }
  ConvexLatticePolygon hull = convex_hull(pts);
  return pick_count(hull).total - pick_count(p).total;
}

// Does the closed segment z -> z + w meet the closed polygon?  Exact rational
// interval clipping against every facet half-plane.
inline bool segment_meets_polygon(const ConvexLatticePolygon& p, Vec2i z,
                                  Vec2i w) {
  Rat lo(0), hi(1);
  for (const FacetData& f : p.facets()) {
    i64 a = dot(f.miller_normal, z);
    i64 b = dot(f.miller_normal, w);
    i64 c = dot(f.miller_normal, f.a);
    if (b == 0) {
      if (a > c) return false;
      continue;
    }
    Rat t = Rat(c - a, b);
    if (b > 0) {
      if (t < hi) hi = t;
    } else {
      if (lo < t) lo = t;
    }
    if (hi < lo) return false;
  }
  return !(hi < lo);
}

// Bonds with both endpoints strictly outside the polygon whose segment still
// meets it.  Only meaningful for directions transversal to every facet; bonds
// sliding along a facet line are classified by the facet terms instead, so
// callers should skip directions parallel to an edge.
inline i64 oracle_straddle_segment(const ConvexLatticePolygon& p, Vec2i w) {
  i64 x0 = p.vertex(0).x, x1 = x0, y0 = p.vertex(0).y, y1 = y0;
  for (const Vec2i& v : p.vertices()) {
    x0 = std::min(x0, v.x);
    x1 = std::max(x1, v.x);
    y0 = std::min(y0, v.y);
    y1 = std::max(y1, v.y);
  }
  i64 pad = std::max(iabs(w.x), iabs(w.y)) + 1;
  i64 acc = 0;
  for (i64 x = x0 - pad; x <= x1 + pad; ++x)
    for (i64 y = y0 - pad; y <= y1 + pad; ++y) {
      Vec2i z{x, y};
      if (p.contains(z) || p.contains(z + w)) continue;
      if (segment_meets_polygon(p, z, w)) ++acc;
    }
  return acc;
}

inline bool parallel_to_some_edge(const ConvexLatticePolygon& p, Vec2i w) {
  for (const FacetData& f : p.facets())
    if (cross(w, f.edge) == 0) return true;
  return false;
}

// Random bond shorter than the polygon's validity threshold; returns (0,0)
// when the polygon is too thin to admit one (caller should skip).
inline Vec2i random_short_bond(std::mt19937_64& g,
                               const ConvexLatticePolygon& p) {
  const Rat& dsq = p.delta_sq();
  if (!(Rat(1) < dsq)) return {0, 0};
  i64 r = (i64)std::floor(p.delta()) + 1;
  for (;;) {
    Vec2i w{rand_int(g, -r, r), rand_int(g, -r, r)};
    if (!is_zero(w) && Rat(norm_sq(w)) < dsq) return w;
  }
}

// Random convex-corner facet pair (incoming normal m, outgoing normal n) and
// a bond pointing out through the corner sector.
struct CornerSpec {
  Vec2i w, n, m;
};

inline CornerSpec random_corner_spec(std::mt19937_64& g) {
  for (;;) {
    Vec2i n{rand_int(g, -9, 9), rand_int(g, -9, 9)};
    Vec2i m{rand_int(g, -9, 9), rand_int(g, -9, 9)};
    if (is_zero(n) || is_zero(m)) continue;
    if (cross(m, n) <= 0) continue;  // want a genuine convex corner
    Vec2i w{rand_int(g, -12, 12), rand_int(g, -12, 12)};
    if (is_zero(w)) continue;
    if (sector_indicator(w, n, m) != 1) continue;
    return {w, n, m};
  }
}

inline Vec2d random_unit_normal(std::mt19937_64& g) {
  double a = rand_real(g, 0, 2 * M_PI);
  return {std::cos(a), std::sin(a)};
}

}  // namespace latsurf::test
