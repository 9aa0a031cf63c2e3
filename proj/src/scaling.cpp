#include "latsurf/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace latsurf {

RemainderSample lattice_remainder(const ConvexRegion& region, double scale) {
  if (!(scale > 0))
    throw std::invalid_argument("lattice remainder: scale must be positive");
  ConvexRegion big = dilate(region, scale);
  RemainderSample s;
  s.scale = scale;
  s.count = lattice_point_count(big);
  s.measure = measure(big);
  s.remainder = (double)s.count - s.measure;
  return s;
}

std::vector<RemainderSample> remainder_study(
    const ConvexRegion& region, const std::vector<double>& scales) {
  std::vector<RemainderSample> out;
  out.reserve(scales.size());
  for (double r : scales) out.push_back(lattice_remainder(region, r));
  return out;
}

namespace {

// Two-sided 97.5% Student-t quantiles; linear use is fine, fits here are
// tiny (3-10 points).
double t_quantile_975(int dof) {
  static const double table[] = {0,     12.706, 4.303, 3.182, 2.776, 2.571,
                                 2.447, 2.365,  2.306, 2.262, 2.228, 2.201,
                                 2.179, 2.160,  2.145, 2.131, 2.120, 2.110,
                                 2.101, 2.093,  2.086, 2.080, 2.074, 2.069,
                                 2.064, 2.060,  2.056, 2.052, 2.048, 2.045,
                                 2.042};
  if (dof <= 0) return std::numeric_limits<double>::infinity();
  if (dof <= 30) return table[dof];
  return 1.96 + 2.46 / dof;  // smooth large-dof approximation
}

}  // namespace

SlopeFit fit_loglog(const std::vector<std::pair<double, double>>& xy,
                    double floor) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [x, y] : xy) {
    if (!(x > 0))
      throw std::invalid_argument("log-log fit: scales must be positive");
    if (std::abs(y) >= floor) pts.emplace_back(std::log(x), std::log(std::abs(y)));
  }
  if (pts.size() < 2)
    throw std::invalid_argument(
        "log-log fit: need at least two samples above the numerical floor");

  int n = (int)pts.size();
  double sx = 0, sy = 0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
  }
  double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (!(sxx > 0))
    throw std::invalid_argument("log-log fit: all scales coincide");

  SlopeFit fit;
  fit.points = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (n >= 3) {
    double sse = 0;
    for (const auto& [x, y] : pts) {
      double e = y - (fit.intercept + fit.slope * x);
      sse += e * e;
    }
    fit.stderr_slope = std::sqrt(sse / (n - 2) / sxx);
    fit.ci_half_width = t_quantile_975(n - 2) * fit.stderr_slope;
  } else {
    fit.stderr_slope = 0;
    fit.ci_half_width = std::numeric_limits<double>::infinity();
  }
  return fit;
}

ConvexLatticePolygon hull_of_scaled(const ConvexRegion& region, double scale) {
  std::vector<Vec2i> pts = enumerate_lattice_points(dilate(region, scale));
  return convex_hull(pts);
}

RationalPolygon equivalent_region(const ConvexLatticePolygon& p, i64 k) {
  if (k < 1)
    throw std::invalid_argument("equivalent region: k must be >= 1");
  std::vector<RationalHalfPlane> planes;
  planes.reserve(p.facets().size());
  for (const FacetData& f : p.facets()) {
    Rat offset = Rat(k) * Rat(dot(f.miller_normal, f.a)) + Rat::of(1, 2);
    planes.push_back({f.miller_normal, offset});
  }
  return RationalPolygon(std::move(planes));
}

namespace {

// Antiderivative of |cos|: integral from 0 to x of |cos u| du.
double integral_abs_cos(double x) {
  double m = std::floor(x / M_PI + 0.5);
  return 2 * m + std::sin(x - M_PI * m);
}

// integral over [a, b] of |cos(u - phase)| du
double integral_abs_cos(double a, double b, double phase) {
  return integral_abs_cos(b - phase) - integral_abs_cos(a - phase);
}

double arc_flux(const MixedRegion& m, Vec2i w) {
  double r = m.radius();
  double lw = norm(w);
  double phase = std::atan2((double)w.y, (double)w.x);
  double acc = 0;
  for (const auto& [a, b] : m.arcs()) acc += r * lw * integral_abs_cos(a, b, phase);
  return acc;
}

}  // namespace

double boundary_abs_flux(const ConvexRegion& region, Vec2i w) {
  if (is_zero(w)) throw std::domain_error("boundary flux: zero bond");
  if (const auto* p = std::get_if<ConvexLatticePolygon>(&region)) {
    i128 acc = 0;
    for (const FacetData& f : p->facets()) acc += iabs(cross(w, f.edge));
    return (double)acc;
  }
  if (const auto* rp = std::get_if<RationalPolygon>(&region)) {
    Rat acc(0);
    const auto& v = rp->vertices();
    for (size_t i = 0; i < v.size(); ++i) {
      RatPoint e = v[(i + 1) % v.size()] - v[i];
      acc += (Rat(w.x) * e.y - Rat(w.y) * e.x).abs();
    }
    return acc.to_double();
  }
  if (const auto* d = std::get_if<Disk>(&region)) return 4 * d->radius() * norm(w);
  if (const auto* e = std::get_if<Ellipse>(&region)) {
    Rat q = e->a_sq * Rat(w.y * w.y) + e->b_sq * Rat(w.x * w.x);
    return 4 * std::sqrt(q.to_double());
  }
  const auto& m = std::get<MixedRegion>(region);
  double acc = arc_flux(m, w);
  for (const auto& c : m.chords()) {
    Vec2i e = c.p_end - c.p_begin;
    acc += (double)iabs(cross(w, e));
  }
  return acc;
}

i64 inverse_miller_integral(const ConvexLatticePolygon& p) {
  i64 acc = 0;
  for (const FacetData& f : p.facets()) acc += f.edge_gcd;
  return acc;
}

namespace {

void require_smooth_decay(const Potential& pot) {
  if (const auto* radial = std::get_if<RadialPotential>(&pot)) {
    if (!(radial->decay_exponent() > 3))
      throw std::invalid_argument(
          "smooth-boundary residual: the radial potential must decay faster "
          "than r^-5 (decay exponent > 3) for the surface integral to "
          "converge");
  }
}

}  // namespace

EnergyBreakdown smooth_energy_residual(const ConvexRegion& region, double r,
                                       const DeformationGradient& F,
                                       const Potential& pot, double epsilon) {
  if (!(r > 0))
    throw std::invalid_argument("smooth-boundary residual: scale must be positive");
  if (!std::holds_alternative<Disk>(region) &&
      !std::holds_alternative<Ellipse>(region))
    throw std::domain_error(
        "smooth-boundary residual: region must be a disk or an ellipse");
  require_smooth_decay(pot);

  EnergyBreakdown out;
  out.truncation_radius = truncation_radius(pot, F, epsilon);
  out.bulk = r * r * measure(region) * stored_energy(F, pot, epsilon);

  KahanSum flux_sum;  // sum over bonds of (boundary flux of w) * phi_w
  for_each_bond(pot, F, epsilon, [&](Vec2i w, double phi) {
    if (phi != 0) flux_sum.add(boundary_abs_flux(region, w) * phi);
  });
  out.surface = r * -0.25 * flux_sum.value();

  double brute = energy_brute(dilate(region, r), F, pot, epsilon);
  out.corner = 0;
  out.residual = brute - out.bulk - out.surface;
  out.total = brute;
  return out;
}

EnergyBreakdown mixed_energy_residual(const MixedRegion& region, i64 k,
                                      const DeformationGradient& F,
                                      const Potential& pot, double epsilon) {
  if (k < 1)
    throw std::invalid_argument("mixed-boundary residual: k must be >= 1");
  require_smooth_decay(pot);

  EnergyBreakdown out;
  out.truncation_radius = truncation_radius(pot, F, epsilon);
  out.bulk = (double)(k * k) * region.measure() * stored_energy(F, pot, epsilon);

  KahanSum arcs;  // continuous density integrated over the kept arcs
  for_each_bond(pot, F, epsilon, [&](Vec2i w, double phi) {
    if (phi != 0) arcs.add(arc_flux(region, w) * phi);
  });
  KahanSum surface;
  surface.add(-0.25 * arcs.value());
  // Flat chords lie on lattice lines, so they carry the lattice-aware
  // (extended) density instead of the continuous one.
  for (const auto& c : region.chords())
    surface.add(c.length * surface_density_extended(
                               F, TaggedNormal::rational(c.normal), pot, epsilon));
  out.surface = (double)k * surface.value();

  double brute = energy_brute(region.scaled(k), F, pot, epsilon);
  out.corner = 0;
  out.residual = brute - out.bulk - out.surface;
  out.total = brute;
  return out;
}

}  // namespace latsurf
