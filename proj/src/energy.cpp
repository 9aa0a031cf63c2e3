#include "latsurf/energy.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>
#include <string>

namespace latsurf {

TaggedNormal TaggedNormal::rational(Vec2i miller) {
  Vec2i m = reduce(miller).primitive;
  TaggedNormal n;
  n.rational_ = true;
  n.miller_ = m;
  n.angle_ = std::atan2((double)m.y, (double)m.x);
  return n;
}

TaggedNormal TaggedNormal::irrational(double angle) {
  if (!std::isfinite(angle))
    throw std::invalid_argument("tagged normal: non-finite angle");
  TaggedNormal n;
  n.rational_ = false;
  n.angle_ = angle;
  return n;
}

const Vec2i& TaggedNormal::miller() const {
  if (!rational_)
    throw std::logic_error("tagged normal: irrational direction has no Miller form");
  return miller_;
}

Vec2d TaggedNormal::unit() const {
  if (rational_) {
    double len = norm(miller_);
    return {(double)miller_.x / len, (double)miller_.y / len};
  }
  return {std::cos(angle_), std::sin(angle_)};
}

double lattice_spacing_weight(const TaggedNormal& n) {
  return n.is_rational() ? 1.0 / norm(n.miller()) : 0.0;
}

double stored_energy(const DeformationGradient& F, const Potential& pot,
                     double epsilon) {
  KahanSum acc;
  for_each_bond(pot, F, epsilon, [&](Vec2i, double phi) { acc.add(phi); });
  return 0.5 * acc.value();
}

double surface_density_faceted(const DeformationGradient& F, Vec2i miller,
                               const Potential& pot, double epsilon) {
  Vec2i n = reduce(miller).primitive;
  KahanSum acc;
  for_each_bond(pot, F, epsilon, [&](Vec2i w, double phi) {
    acc.add((double)(iabs(dot(w, n)) - 1) * phi);
  });
  return -acc.value() / (4 * norm(n));
}

double surface_density_continuous(const DeformationGradient& F, Vec2d normal,
                                  const Potential& pot, double epsilon) {
  double len = std::sqrt(normal.x * normal.x + normal.y * normal.y);
  if (!(len > 0) || !std::isfinite(len))
    throw std::invalid_argument("surface density: normal must be nonzero");
  Vec2d n{normal.x / len, normal.y / len};
  KahanSum acc;
  for_each_bond(pot, F, epsilon, [&](Vec2i w, double phi) {
    acc.add(std::abs((double)w.x * n.x + (double)w.y * n.y) * phi);
  });
  return -0.25 * acc.value();
}

double surface_density_extended(const DeformationGradient& F,
                                const TaggedNormal& n, const Potential& pot,
                                double epsilon) {
  double base = surface_density_continuous(F, n.unit(), pot, epsilon);
  double h = lattice_spacing_weight(n);
  if (h == 0) return base;
  return base + 0.5 * stored_energy(F, pot, epsilon) * h;
}

double vertex_energy(const DeformationGradient& F, Vec2i n, Vec2i m,
                     const Potential& pot, double epsilon) {
  Vec2i nbar = reduce(n).primitive;
  Vec2i mbar = reduce(m).primitive;
  if (cross(nbar, mbar) == 0)
    throw std::domain_error("vertex energy: facet normals are parallel");
  // Opening angle between the unit normals, in (0, pi).
  double theta =
      std::atan2((double)iabs(cross(nbar, mbar)), (double)dot(nbar, mbar));
  double frac = theta / (2 * M_PI);

  KahanSum acc;
  for_each_bond(pot, F, epsilon, [&](Vec2i w, double phi) {
    i64 g = gcd_of(w);
    int h = sector_indicator(w, nbar, mbar);
    double term = ((double)h - frac) * (double)(g - 1);
    if (h == 1) term += (double)triangle_interior_count(w, nbar, mbar);
    if (term != 0) acc.add(term * phi);
  });
  return 0.5 * acc.value();
}

namespace {

// Column table of a region, dense in x so bond partners are O(1) lookups.
struct ColumnTable {
  i64 x0 = 0;
  std::vector<std::pair<i64, i64>> col;  // (ylo, yhi), empty when ylo > yhi

  explicit ColumnTable(const std::vector<ColumnSpan>& spans) {
    if (spans.empty()) return;
    x0 = spans.front().x;
    col.assign((size_t)(spans.back().x - x0 + 1), {0, -1});
    for (const ColumnSpan& s : spans) col[(size_t)(s.x - x0)] = {s.ylo, s.yhi};
  }

  i64 bond_count(Vec2i w) const {
    i64 acc = 0;
    i64 nx = (i64)col.size();
    for (i64 i = 0; i < nx; ++i) {
      auto [lo, hi] = col[(size_t)i];
      if (lo > hi) continue;
      i64 pi = i + w.x;
      if (pi < 0 || pi >= nx) continue;
      auto [plo, phi_y] = col[(size_t)pi];
      if (plo > phi_y) continue;
      i64 a = std::max(lo, plo - w.y);
      i64 b = std::min(hi, phi_y - w.y);
      if (b >= a) acc += b - a + 1;
    }
    return acc;
  }
};

}  // namespace

double energy_brute(const ConvexRegion& region, const DeformationGradient& F,
                    const Potential& pot, double epsilon) {
  ColumnTable table(column_spans(region));
  KahanSum acc;
  for_each_bond(pot, F, epsilon, [&](Vec2i w, double phi) {
    if (phi == 0) return;
    i64 n = table.bond_count(w);
    if (n != 0) acc.add((double)n * phi);
  });
  return 0.5 * acc.value();
}

namespace {

// Shared assembly for the closed-form split; callers pick the dilation k.
EnergyBreakdown closed_form_parts(const ConvexLatticePolygon& p,
                                  const DeformationGradient& F,
                                  const Potential& pot, double epsilon) {
  EnergyBreakdown out;
  double area = 0.5 * (double)p.area2();
  out.bulk = area * stored_energy(F, pot, epsilon);

  KahanSum surf;
  const auto& facets = p.facets();
  for (const FacetData& f : facets)
    surf.add(f.length *
             surface_density_faceted(F, f.miller_normal, pot, epsilon));
  out.surface = surf.value();

  KahanSum corner;
  int nfac = (int)facets.size();
  for (int i = 0; i < nfac; ++i)
    corner.add(vertex_energy(F, facets[i].miller_normal,
                             facets[(i + nfac - 1) % nfac].miller_normal, pot,
                             epsilon));
  out.corner = corner.value();
  return out;
}

}  // namespace

EnergyBreakdown energy_exact(const ConvexLatticePolygon& p,
                             const DeformationGradient& F,
                             const FiniteTable& table) {
  if (!(Rat(table.max_norm_sq()) < p.delta_sq()))
    throw std::domain_error(
        "exact energy split: longest table bond must stay below the vertex "
        "clearance delta; dilate the polygon or use energy_brute");
  Potential pot = table;
  EnergyBreakdown out = closed_form_parts(p, F, pot, kDefaultEpsilon);
  out.residual = 0;
  out.total = out.bulk + out.surface + out.corner;
  out.truncation_radius = table.max_norm();
  return out;
}

EnergyBreakdown scaled_energy_decomposition(const ConvexLatticePolygon& p,
                                            i64 k,
                                            const DeformationGradient& F,
                                            const Potential& pot,
                                            double epsilon) {
  if (k < 1)
    throw std::invalid_argument("scaled energy split: k must be >= 1");
  EnergyBreakdown unit = closed_form_parts(p, F, pot, epsilon);
  EnergyBreakdown out;
  out.bulk = (double)(k * k) * unit.bulk;
  out.surface = (double)k * unit.surface;
  out.corner = unit.corner;
  out.truncation_radius = truncation_radius(pot, F, epsilon);
  double brute = energy_brute(p.scaled(k), F, pot, epsilon);
  out.residual = brute - out.bulk - out.surface - out.corner;
  out.total = brute;
  return out;
}

namespace {

struct SampledPlane {
  double ang;
  Vec2d n;
  double c;
};

Vec2d plane_intersection(const SampledPlane& a, const SampledPlane& b) {
  double det = a.n.x * b.n.y - a.n.y * b.n.x;
  return {(a.c * b.n.y - b.c * a.n.y) / det,
          (b.c * a.n.x - a.c * b.n.x) / det};
}

bool vertex_violates(const SampledPlane& a, const SampledPlane& b,
                     const SampledPlane& c) {
  Vec2d v = plane_intersection(a, b);
  return v.x * c.n.x + v.y * c.n.y > c.c + 1e-12;
}

}  // namespace

std::vector<Vec2d> wulff_shape(const DeformationGradient& F,
                               const Potential& pot, int samples,
                               double epsilon, bool use_extended_density,
                               i64 max_miller) {
  if (samples < 16)
    throw std::invalid_argument("crystal shape: at least 16 samples required");

  auto bonds = deformed_bond_values(pot, F, epsilon);
  auto continuous_density = [&](Vec2d n) {
    KahanSum acc;
    for (const auto& [w, phi] : bonds)
      acc.add(std::abs((double)w.x * n.x + (double)w.y * n.y) * phi);
    return -0.25 * acc.value();
  };

  std::vector<SampledPlane> planes;
  planes.reserve((size_t)samples);
  for (int j = 0; j < samples; ++j) {
    double ang = 2 * M_PI * j / samples;
    Vec2d n{std::cos(ang), std::sin(ang)};
    planes.push_back({ang, n, continuous_density(n)});
  }
  if (use_extended_density) {
    double w_half = 0;
    {
      KahanSum acc;
      for (const auto& [w, phi] : bonds) acc.add(phi);
      w_half = 0.25 * acc.value();  // (1/2) stored energy
    }
    for (i64 a = -max_miller; a <= max_miller; ++a) {
      for (i64 b = -max_miller; b <= max_miller; ++b) {
        Vec2i m{a, b};
        if (is_zero(m) || gcd_of(m) != 1 || norm_sq(m) > max_miller * max_miller)
          continue;
        double len = norm(m);
        Vec2d n{(double)a / len, (double)b / len};
        double ang = std::atan2(n.y, n.x);
        if (ang < 0) ang += 2 * M_PI;
        planes.push_back({ang, n, continuous_density(n) + w_half / len});
      }
    }
  }

  for (const SampledPlane& pl : planes)
    if (!(pl.c > 0))
      throw std::domain_error(
          "crystal shape: surface density must be positive in every sampled "
          "direction (value " +
          std::to_string(pl.c) + " at angle " + std::to_string(pl.ang) + ")");

  std::sort(planes.begin(), planes.end(),
            [](const SampledPlane& a, const SampledPlane& b) {
              return a.ang < b.ang;
            });
  // Merge planes with equal direction, keeping the tighter offset.
  std::vector<SampledPlane> merged;
  for (const SampledPlane& pl : planes) {
    if (!merged.empty() && std::abs(pl.ang - merged.back().ang) < 1e-12) {
      merged.back().c = std::min(merged.back().c, pl.c);
    } else {
      merged.push_back(pl);
    }
  }

  // All offsets are positive and the directions sweep the whole circle, so
  // the intersection is a bounded polygon around the origin; the usual
  // angular-sweep half-plane intersection applies.
  std::deque<SampledPlane> dq;
  for (const SampledPlane& pl : merged) {
    while (dq.size() >= 2 && vertex_violates(dq[dq.size() - 2], dq.back(), pl))
      dq.pop_back();
    while (dq.size() >= 2 && vertex_violates(dq[0], dq[1], pl))
      dq.pop_front();
    dq.push_back(pl);
  }
  while (dq.size() >= 3 && vertex_violates(dq[dq.size() - 2], dq.back(), dq[0]))
    dq.pop_back();
  while (dq.size() >= 3 && vertex_violates(dq[0], dq[1], dq.back()))
    dq.pop_front();
  if (dq.size() < 3)
    throw std::domain_error("crystal shape: degenerate half-plane envelope");

  std::vector<Vec2d> verts;
  for (size_t i = 0; i < dq.size(); ++i)
    verts.push_back(plane_intersection(dq[i], dq[(i + 1) % dq.size()]));
  // Drop numerically repeated corners (many tight planes through one vertex).
  std::vector<Vec2d> out;
  for (const Vec2d& v : verts) {
    if (out.empty() || std::hypot(v.x - out.back().x, v.y - out.back().y) > 1e-9)
      out.push_back(v);
  }
  while (out.size() > 1 &&
         std::hypot(out.front().x - out.back().x,
                    out.front().y - out.back().y) <= 1e-9)
    out.pop_back();

  // Deterministic start: lexicographically smallest vertex first.
  size_t start = 0;
  for (size_t i = 1; i < out.size(); ++i) {
    if (out[i].x < out[start].x - 1e-12 ||
        (std::abs(out[i].x - out[start].x) <= 1e-12 && out[i].y < out[start].y))
      start = i;
  }
  std::rotate(out.begin(), out.begin() + (long)start, out.end());
  return out;
}

}  // namespace latsurf
