#pragma once

#include <vector>

#include "latsurf/bond_count.hpp"
#include "latsurf/deformation.hpp"
#include "latsurf/polygon.hpp"
#include "latsurf/potential.hpp"
#include "latsurf/region.hpp"

namespace latsurf {

// A boundary direction that declares whether it is a lattice (Miller) normal
// or an arbitrary irrational direction.  Rationality of a real vector is not
// decidable from its bits, so the caller has to tag it; the extended surface
// density depends on the tag.
class TaggedNormal {
 public:
  static TaggedNormal rational(Vec2i miller);     // reduced to coprime form
  static TaggedNormal irrational(double angle);   // direction (cos a, sin a)

  bool is_rational() const { return rational_; }
  const Vec2i& miller() const;  // throws unless rational
  double angle() const { return angle_; }
  Vec2d unit() const;

 private:
  TaggedNormal() = default;
  bool rational_ = false;
  Vec2i miller_{0, 0};
  double angle_ = 0;
};

// Lattice-plane spacing factor: 1 / |miller| for rational normals, 0 for
// irrational ones (planes of lattice points exist only in rational
// directions).  Nowhere continuous in the angle, by design.
double lattice_spacing_weight(const TaggedNormal& n);

// Energy per unit area of the infinite homogeneously deformed crystal:
// (1/2) sum over bonds of phi(|F w|).
double stored_energy(const DeformationGradient& F, const Potential& pot,
                     double epsilon = kDefaultEpsilon);

// Surface energy per unit length of a flat boundary facet with outward
// Miller normal n (input reduced internally):
//   -(1 / 4 |n|) sum over bonds of (|dot(w, n)| - 1) phi(|F w|).
double surface_density_faceted(const DeformationGradient& F, Vec2i miller,
                               const Potential& pot,
                               double epsilon = kDefaultEpsilon);

// Continuum limit of the surface density for a unit outward normal n
// (normalized internally):  -(1/4) sum over bonds of |dot(w, n)| phi(|F w|).
// Lipschitz in n, even, and positively 1-homogeneous before normalization.
double surface_density_continuous(const DeformationGradient& F, Vec2d normal,
                                  const Potential& pot,
                                  double epsilon = kDefaultEpsilon);

// Surface density including the lattice-plane correction:
// continuous part plus (1/2) stored_energy * lattice_spacing_weight.
// Rational directions therefore sit a jump of W / (2 |miller|) away from the
// surrounding irrational limit.
double surface_density_extended(const DeformationGradient& F,
                                const TaggedNormal& n, const Potential& pot,
                                double epsilon = kDefaultEpsilon);

// Energy carried by one boundary vertex where the facet with outward normal
// n leaves the vertex and the facet with outward normal m enters it (CCW
// order).  theta is the opening between the unit normals:
//   (1/2) sum over bonds of
//       [(H - theta / 2 pi) (gcd(w) - 1) + H * triangle_interior_count] phi,
// with H = sector_indicator(w, n, m).
double vertex_energy(const DeformationGradient& F, Vec2i n, Vec2i m,
                     const Potential& pot, double epsilon = kDefaultEpsilon);

struct EnergyBreakdown {
  double bulk = 0;
  double surface = 0;
  double corner = 0;
  double residual = 0;
  double total = 0;             // == bulk + surface + corner + residual
  double truncation_radius = 0;
};

// Total energy of the lattice points inside a region by direct summation:
// (1/2) sum over bonds w and points x with x, x + w both in the region.
double energy_brute(const ConvexRegion& region, const DeformationGradient& F,
                    const Potential& pot, double epsilon = kDefaultEpsilon);

// Exact closed-form split of the crystal energy of a polygon into bulk,
// facet and vertex parts.  Valid for finite tables whose longest bond stays
// below the vertex clearance (max_norm < delta, checked exactly); then
// residual == 0 and total matches energy_brute to rounding.
EnergyBreakdown energy_exact(const ConvexLatticePolygon& p,
                             const DeformationGradient& F,
                             const FiniteTable& table);

// Closed-form bulk/surface/corner values for the k-fold dilation of p, plus
// the measured residual against direct summation.  Works for any potential;
// with an infinite-range potential the residual carries the bonds the
// closed form misattributes, which decays like k^(2 - d).
EnergyBreakdown scaled_energy_decomposition(const ConvexLatticePolygon& p,
                                            i64 k,
                                            const DeformationGradient& F,
                                            const Potential& pot,
                                            double epsilon = kDefaultEpsilon);

// Equilibrium crystal shape: intersection of half-planes
// { x : dot(x, n) <= density(n) } over `samples` uniformly spaced unit
// normals (at least 16).  With use_extended_density, Miller directions with
// |n| <= max_miller are added using the extended density.  Every sampled
// density must be positive.  Vertices come back in CCW order.
std::vector<Vec2d> wulff_shape(const DeformationGradient& F,
                               const Potential& pot, int samples,
                               double epsilon = kDefaultEpsilon,
                               bool use_extended_density = false,
                               i64 max_miller = 20);

}  // namespace latsurf
