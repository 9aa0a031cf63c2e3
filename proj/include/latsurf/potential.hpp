#pragma once

#include <cmath>
#include <variant>
#include <vector>

#include "latsurf/deformation.hpp"
#include "latsurf/lattice.hpp"

namespace latsurf {

// ---------------------------------------------------------------------------
// Radial pair terms phi(r).
// ---------------------------------------------------------------------------

// phi(r) == value, independent of the deformed bond length.
struct ConstantTerm {
  double value = 0;
};

// phi(r) = amplitude * r^(-exponent).
struct InversePowerTerm {
  double amplitude = 0;
  double exponent = 0;
};

// phi(r) = well_depth * ((minimum / r)^12 - 2 (minimum / r)^6):
// minimized at r == minimum with phi(minimum) == -well_depth.
struct LennardJonesTerm {
  double well_depth = 1;
  double minimum = 1;
};

using RadialTerm = std::variant<ConstantTerm, InversePowerTerm, LennardJonesTerm>;

double radial_value(const RadialTerm& term, double r);
double radial_value_sq(const RadialTerm& term, double r_sq);
bool radial_term_equal(const RadialTerm& a, const RadialTerm& b);

// ---------------------------------------------------------------------------
// Pair potentials: a finite symmetric bond table, or one radial law applied
// to every lattice vector.
// ---------------------------------------------------------------------------

struct TableEntry {
  Vec2i w;
  RadialTerm term;
};

// Finite set of interacting bonds.  Every energy in this project sums over
// ordered bonds, so the table must contain -w alongside w with the same term;
// construction verifies that (or fills the mirrors in when symmetrize is
// set), rejects w == 0 and duplicates, and sorts entries for reproducible
// summation order.
class FiniteTable {
 public:
  explicit FiniteTable(std::vector<TableEntry> entries, bool symmetrize = false);

  const std::vector<TableEntry>& entries() const { return entries_; }
  double max_norm() const { return max_norm_; }
  i64 max_norm_sq() const { return max_norm_sq_; }

 private:
  std::vector<TableEntry> entries_;
  double max_norm_ = 0;
  i64 max_norm_sq_ = 0;
};

// One radial term applied to all nonzero lattice vectors.  The term must
// decay: |phi(r)| <= envelope_constant * r^-(2 + decay_exponent) for
// r >= envelope_onset, which construction derives from the term parameters.
class RadialPotential {
 public:
  explicit RadialPotential(RadialTerm form);

  const RadialTerm& form() const { return form_; }
  double decay_exponent() const { return decay_; }
  double envelope_constant() const { return envelope_c_; }
  double envelope_onset() const { return onset_; }

 private:
  RadialTerm form_;
  double decay_ = 0;
  double envelope_c_ = 0;
  double onset_ = 0;
};

using Potential = std::variant<FiniteTable, RadialPotential>;

// Default tail tolerance for truncated lattice sums.  Infinite-range
// potentials at this tolerance need very large cutoff radii; pass a looser
// epsilon explicitly when summing over regions (the bond-count guard below
// turns runaway requests into errors instead of hour-long loops).
constexpr double kDefaultEpsilon = 1e-9;

// Largest number of bonds a truncated sum may touch before we refuse.
constexpr double kMaxTruncatedBonds = 2.5e8;

// Smallest rho with  sum over |w| > rho of |w|^2 |phi(|F w|)|  < epsilon,
// from a closed-form tail bound using the smallest singular value of F.
// Finite tables return their longest bond length.
double truncation_radius(const Potential& pot, const DeformationGradient& F,
                         double epsilon);

// Compensated (Kahan) accumulator; keeps lattice sums reproducible at the
// 1e-15 level regardless of magnitude spread.
struct KahanSum {
  double sum = 0, comp = 0;
  void add(double x) {
    double y = x - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

namespace detail {

// Walks the square ring max(|x|, |y|) == s in a fixed order.
template <class Fn>
void for_each_on_ring(i64 s, Fn&& fn) {
  for (i64 x = -s; x <= s; ++x) fn(Vec2i{x, s});
  for (i64 x = -s; x <= s; ++x) fn(Vec2i{x, -s});
  for (i64 y = -s + 1; y <= s - 1; ++y) fn(Vec2i{-s, y});
  for (i64 y = -s + 1; y <= s - 1; ++y) fn(Vec2i{s, y});
}

}  // namespace detail

// Deterministic sweep over the potential's bonds: fn(w, phi(|F w|)) for every
// ordered bond w.  Finite tables visit their entries in stored order; radial
// potentials visit square rings of growing max-norm, keeping |w| inside the
// truncation radius for the requested epsilon.
template <class Fn>
void for_each_bond(const Potential& pot, const DeformationGradient& F,
                   double epsilon, Fn&& fn) {
  if (const auto* table = std::get_if<FiniteTable>(&pot)) {
    for (const TableEntry& e : table->entries())
      fn(e.w, radial_value_sq(e.term, F.deformed_length_sq(e.w)));
    return;
  }
  const auto& radial = std::get<RadialPotential>(pot);
  double rho = truncation_radius(pot, F, epsilon);
  double rho_sq = rho * rho;
  i64 rings = (i64)std::ceil(rho);
  for (i64 s = 1; s <= rings; ++s) {
    detail::for_each_on_ring(s, [&](Vec2i w) {
      if ((double)norm_sq(w) <= rho_sq)
        fn(w, radial_value_sq(radial.form(), F.deformed_length_sq(w)));
    });
  }
}

// Materialized bond sweep for quantities evaluated at many directions with
// one bond set (surface-density sweeps, Wulff construction).
std::vector<std::pair<Vec2i, double>> deformed_bond_values(
    const Potential& pot, const DeformationGradient& F, double epsilon);

}  // namespace latsurf
