#pragma once

#include <vector>

#include "latsurf/energy.hpp"
#include "latsurf/polygon.hpp"
#include "latsurf/region.hpp"

namespace latsurf {

// Lattice count vs area of a dilated region.
struct RemainderSample {
  double scale = 1;
  i64 count = 0;
  double measure = 0;
  double remainder = 0;  // count - measure, usually O(boundary length)
};

RemainderSample lattice_remainder(const ConvexRegion& region, double scale);
std::vector<RemainderSample> remainder_study(const ConvexRegion& region,
                                             const std::vector<double>& scales);

// Least-squares line through (log x, log |y|), for growth/decay exponents.
// Samples with |y| below the floor are discarded as numerical zeros.
struct SlopeFit {
  double slope = 0;
  double intercept = 0;
  double stderr_slope = 0;
  double ci_half_width = 0;  // 95% two-sided, Student-t with n-2 dof
  int points = 0;
};
SlopeFit fit_loglog(const std::vector<std::pair<double, double>>& xy,
                    double floor = 1e-8);

// Convex hull of the lattice points of the dilated region.
ConvexLatticePolygon hull_of_scaled(const ConvexRegion& region, double scale);

// Polygon with the same lattice points as every dilation of p: half-planes
// of k * p pushed out by half a lattice-plane spacing,
// dot(x, n_i) <= k d_i + 1/2.
RationalPolygon equivalent_region(const ConvexLatticePolygon& p, i64 k);

// Boundary integral of |dot(w, n)| ds; closed forms for every region kind.
// For polygons this is sum |cross(w, edge_i)|, an exact integer.
double boundary_abs_flux(const ConvexRegion& region, Vec2i w);

// Sum over facets of length / |miller normal| == number of boundary lattice
// steps == boundary lattice-point count.
i64 inverse_miller_integral(const ConvexLatticePolygon& p);

// Crystal energy of a smooth region (disk or ellipse) dilated by r, minus
// bulk and the continuous surface integral.  No corner term: the residual
// carries the curvature effects, which grow like r^(2/3).
EnergyBreakdown smooth_energy_residual(const ConvexRegion& region, double r,
                                       const DeformationGradient& F,
                                       const Potential& pot,
                                       double epsilon = kDefaultEpsilon);

// Same split for a circle-with-chords region dilated by an integer k: flat
// chords use the extended (lattice-aware) density, arcs the continuous one.
EnergyBreakdown mixed_energy_residual(const MixedRegion& region, i64 k,
                                      const DeformationGradient& F,
                                      const Potential& pot,
                                      double epsilon = kDefaultEpsilon);

}  // namespace latsurf
