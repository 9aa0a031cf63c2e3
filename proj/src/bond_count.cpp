#include "latsurf/bond_count.hpp"

#include <stdexcept>
#include <utility>

namespace latsurf {

namespace {

void require_nonzero(Vec2i v, const char* what) {
  if (is_zero(v)) throw std::domain_error(std::string(what) + ": zero vector");
}

}  // namespace

int sector_indicator(Vec2i w, Vec2i n, Vec2i m) {
  require_nonzero(w, "sector_indicator: bond");
  require_nonzero(n, "sector_indicator: normal");
  require_nonzero(m, "sector_indicator: normal");
  i128 a = dot(w, n);
  i128 b = dot(w, m);
  return (a > 0 && b < 0) || (a < 0 && b > 0) ? 1 : 0;
}

CornerTriangle corner_triangle(Vec2i w, Vec2i n, Vec2i m) {
  require_nonzero(w, "corner_triangle: bond");
  Vec2i nbar = reduce(n).primitive;
  Vec2i mbar = reduce(m).primitive;
  if (cross(nbar, mbar) == 0)
    throw std::domain_error("corner_triangle: facet normals are parallel");

  // q lies on the facet line through the vertex (dot(q, n) == 0) and on the
  // other facet line shifted by the bond (dot(q - w, m) == 0).
  Vec2i nperp = perp(nbar);
  Rat c(dot(mbar, w), dot(mbar, nperp));
  CornerTriangle t;
  t.q = {c * Rat(nperp.x), c * Rat(nperp.y)};

  PrimitiveDecomposition wd = reduce(w);
  Vec2i u = bezout_companion(wd.primitive);
  t.alpha = dot(t.q, perp(wd.primitive));
  t.beta = -dot(t.q, perp(u));
  t.k = wd.g;
  return t;
}

i64 staircase_sum(const Rat& alpha, const Rat& beta, i64 k) {
  if (k < 1) throw std::invalid_argument("staircase_sum: k must be >= 1");
  if (alpha == Rat(0)) return 0;
  Rat a = alpha.abs();
  i128 cols = a.ceil() - 1;  // interior columns 1 .. ceil(|alpha|) - 1
  if (cols <= 0) return 0;

  // sum over columns j of ceil((beta - k) j / |alpha|) - floor(beta j / |alpha|)
  Rat top = beta - Rat(k);
  i128 s = cols * (i128)(k - 1);
  s += sum_ceil_linear(cols, top.num() * a.den(), top.den() * a.num());
  s -= sum_floor_linear(cols, beta.num() * a.den(), beta.den() * a.num());
  return (i64)s;
}

i64 triangle_interior_count(Vec2i w, Vec2i n, Vec2i m) {
  if (sector_indicator(w, n, m) != 1)
    throw std::domain_error(
        "triangle_interior_count: bond does not exit through the vertex "
        "sector (need dot(w,n)*dot(w,m) < 0)");
  CornerTriangle t = corner_triangle(w, n, m);
  return staircase_sum(t.alpha, t.beta, t.k);
}

i64 outward_crossing_count(const ConvexLatticePolygon& p, Vec2i w) {
  require_nonzero(w, "outward_crossing_count: bond");
  i64 acc = gcd_of(w);
  for (const FacetData& f : p.facets()) {
    i64 t = dot(w, f.miller_normal);
    if (t > 0) acc += f.edge_gcd * t;
  }
  return acc;
}

i64 straddle_count(const ConvexLatticePolygon& p, Vec2i w) {
  require_nonzero(w, "straddle_count: bond");
  if (!(Rat(norm_sq(w)) < p.delta_sq()))
    throw std::domain_error(
        "straddle_count: bond length must stay below the vertex clearance "
        "delta so each straddling bond clips a single vertex");
  i64 g = gcd_of(w);
  i64 acc = 0;
  const auto& facets = p.facets();
  int nfac = (int)facets.size();
  for (int i = 0; i < nfac; ++i) {
    // Vertex i joins incoming facet i-1 (normal m) and outgoing facet i (n).
    Vec2i n = facets[i].miller_normal;
    Vec2i m = facets[(i + nfac - 1) % nfac].miller_normal;
    if (sector_indicator(w, n, m) == 1)
      acc += (g - 1) + triangle_interior_count(w, n, m);
  }
  return acc;
}

i64 bond_number(const ConvexLatticePolygon& p, Vec2i w) {
  require_nonzero(w, "bond_number: bond");
  if (!(Rat(norm_sq(w)) < p.delta_sq()))
    throw std::domain_error(
        "bond_number: closed form needs |w| < delta(p); use "
        "bond_number_brute for longer bonds");
  return pick_count(p).total - outward_crossing_count(p, w) +
         straddle_count(p, w);
}

i64 bond_number_brute(const std::vector<ColumnSpan>& spans, Vec2i w) {
  require_nonzero(w, "bond_number_brute: bond");
  if (spans.empty()) return 0;
  i64 x0 = spans.front().x;
  i64 x1 = spans.back().x;
  // Dense column table; convex regions may skip columns with no lattice row.
  std::vector<std::pair<i64, i64>> col((size_t)(x1 - x0 + 1), {0, -1});
  for (const ColumnSpan& s : spans) col[(size_t)(s.x - x0)] = {s.ylo, s.yhi};

  i64 acc = 0;
  for (const ColumnSpan& s : spans) {
    i64 px = s.x + w.x;
    if (px < x0 || px > x1) continue;
    auto [plo, phi] = col[(size_t)(px - x0)];
    if (plo > phi) continue;
    i64 lo = std::max(s.ylo, plo - w.y);
    i64 hi = std::min(s.yhi, phi - w.y);
    if (hi >= lo) acc += hi - lo + 1;
  }
  return acc;
}

i64 bond_number_brute(const ConvexRegion& region, Vec2i w) {
  require_nonzero(w, "bond_number_brute: bond");
  return bond_number_brute(column_spans(region), w);
}

}  // namespace latsurf
