#include "latsurf/potential.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace latsurf {

double radial_value_sq(const RadialTerm& term, double r_sq) {
  if (const auto* c = std::get_if<ConstantTerm>(&term)) return c->value;
  if (const auto* p = std::get_if<InversePowerTerm>(&term))
    return p->amplitude * std::pow(r_sq, -0.5 * p->exponent);
  const auto& lj = std::get<LennardJonesTerm>(term);
  double s6 = lj.minimum * lj.minimum / r_sq;
  s6 = s6 * s6 * s6;
  return lj.well_depth * (s6 * s6 - 2 * s6);
}

double radial_value(const RadialTerm& term, double r) {
  return radial_value_sq(term, r * r);
}

bool radial_term_equal(const RadialTerm& a, const RadialTerm& b) {
  if (a.index() != b.index()) return false;
  if (const auto* c = std::get_if<ConstantTerm>(&a))
    return c->value == std::get<ConstantTerm>(b).value;
  if (const auto* p = std::get_if<InversePowerTerm>(&a)) {
    const auto& q = std::get<InversePowerTerm>(b);
    return p->amplitude == q.amplitude && p->exponent == q.exponent;
  }
  const auto& x = std::get<LennardJonesTerm>(a);
  const auto& y = std::get<LennardJonesTerm>(b);
  return x.well_depth == y.well_depth && x.minimum == y.minimum;
}

FiniteTable::FiniteTable(std::vector<TableEntry> entries, bool symmetrize) {
  std::map<std::pair<i64, i64>, RadialTerm> by_vec;
  for (const TableEntry& e : entries) {
    if (is_zero(e.w))
      throw std::invalid_argument("finite table: bond w = (0,0) is undefined");
    auto key = std::make_pair(e.w.x, e.w.y);
    auto [it, fresh] = by_vec.emplace(key, e.term);
    if (!fresh) {
      if (!radial_term_equal(it->second, e.term))
        throw std::invalid_argument(
            "finite table: conflicting duplicate entries for bond (" +
            std::to_string(e.w.x) + "," + std::to_string(e.w.y) + ")");
    }
  }
  if (by_vec.empty())
    throw std::invalid_argument("finite table: at least one bond required");

  for (auto& [key, term] : by_vec) {
    auto mirror = std::make_pair(-key.first, -key.second);
    auto it = by_vec.find(mirror);
    if (it == by_vec.end()) {
      if (!symmetrize)
        throw std::invalid_argument(
            "finite table: missing mirror bond (" +
            std::to_string(mirror.first) + "," + std::to_string(mirror.second) +
            "); add it or construct with symmetrize");
    } else if (!radial_term_equal(term, it->second)) {
      throw std::invalid_argument(
          "finite table: bonds (" + std::to_string(key.first) + "," +
          std::to_string(key.second) + ") and its mirror carry different terms");
    }
  }
  if (symmetrize) {
    auto snapshot = by_vec;
    for (const auto& [key, term] : snapshot)
      by_vec.emplace(std::make_pair(-key.first, -key.second), term);
  }

  entries_.reserve(by_vec.size());
  for (const auto& [key, term] : by_vec) {
    Vec2i w{key.first, key.second};
    entries_.push_back({w, term});
    max_norm_sq_ = std::max(max_norm_sq_, norm_sq(w));
  }
  max_norm_ = std::sqrt((double)max_norm_sq_);
}

RadialPotential::RadialPotential(RadialTerm form) : form_(form) {
  if (const auto* p = std::get_if<InversePowerTerm>(&form_)) {
    if (!(p->exponent > 2))
      throw std::invalid_argument(
          "radial potential: inverse-power exponent must exceed 2 for the "
          "lattice sum to converge");
    decay_ = p->exponent - 2;
    envelope_c_ = std::abs(p->amplitude);
    onset_ = 0;
  } else if (const auto* lj = std::get_if<LennardJonesTerm>(&form_)) {
    if (!(lj->well_depth > 0) || !(lj->minimum > 0))
      throw std::invalid_argument(
          "radial potential: well depth and minimum must be positive");
    // For r >= minimum the repulsive part is below the attractive one, so
    // |phi| <= 3 * well_depth * (minimum / r)^6.
    decay_ = 4;
    double m6 = std::pow(lj->minimum, 6);
    envelope_c_ = 3 * lj->well_depth * m6;
    onset_ = lj->minimum;
  } else {
    throw std::invalid_argument(
        "radial potential: constant terms do not decay; use a finite table");
  }
}

double truncation_radius(const Potential& pot, const DeformationGradient& F,
                         double epsilon) {
  if (!(epsilon > 0))
    throw std::invalid_argument("truncation radius: epsilon must be positive");
  if (const auto* table = std::get_if<FiniteTable>(&pot))
    return table->max_norm();

  const auto& radial = std::get<RadialPotential>(pot);
  double d = radial.decay_exponent();
  if (!(d > 2))
    throw std::invalid_argument(
        "truncation radius: potential must decay faster than r^-4 "
        "(decay exponent > 2)");
  double sigma = F.sigma_min();
  double c = radial.envelope_constant() * std::pow(sigma, -(2 + d));
  const double sqrt2 = std::sqrt(2.0);
  // Tail bound: each lattice point owns a unit square within sqrt(2)/2 of it,
  // so the sum over |w| > rho of |w|^2 |phi(|F w|)| is dominated by the
  // integral of the (decreasing) envelope over |x| > rho - sqrt(2), evaluated
  // at |x| - sqrt(2):  2 pi c [r^(2-d)/(d-2) + sqrt(2) r^(1-d)/(d-1)] at
  // r = rho - 2 sqrt(2).
  auto bound = [&](double rho) {
    double r0 = rho - 2 * sqrt2;
    return 2 * M_PI * c *
           (std::pow(r0, 2 - d) / (d - 2) + sqrt2 * std::pow(r0, 1 - d) / (d - 1));
  };

  // The envelope only holds once |F w| >= onset, i.e. |w| >= onset / sigma.
  double lo = std::max(4.0, radial.envelope_onset() / sigma + 3);
  if (bound(lo) <= epsilon) return lo;
  double hi = lo;
  while (bound(hi) > epsilon) {
    hi *= 2;
    if (hi > 1e12)
      throw std::invalid_argument(
          "truncation radius: tail bound never reaches epsilon");
  }
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (bound(mid) > epsilon ? lo : hi) = mid;
  }
  if (M_PI * hi * hi > kMaxTruncatedBonds)
    throw std::invalid_argument(
        "truncation radius: epsilon = " + std::to_string(epsilon) +
        " needs about " + std::to_string((long long)(M_PI * hi * hi)) +
        " bonds per sum; raise epsilon");
  return hi;
}

std::vector<std::pair<Vec2i, double>> deformed_bond_values(
    const Potential& pot, const DeformationGradient& F, double epsilon) {
  std::vector<std::pair<Vec2i, double>> out;
  if (const auto* table = std::get_if<FiniteTable>(&pot))
    out.reserve(table->entries().size());
  for_each_bond(pot, F, epsilon,
                [&](Vec2i w, double phi) { out.emplace_back(w, phi); });
  return out;
}

}  // namespace latsurf
