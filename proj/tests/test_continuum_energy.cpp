#include <doctest.h>

#include <cmath>

#include "latsurf/energy.hpp"
#include "latsurf/potential.hpp"
#include "test_support.hpp"

using namespace latsurf;
using namespace latsurf::test;

namespace {
const DeformationGradient kI = DeformationGradient::identity();
}

TEST_CASE("deformation gradient validation and singular values") {
  CHECK_THROWS_AS(DeformationGradient(1, 0, 0, -1), std::invalid_argument);
  CHECK_THROWS_AS(DeformationGradient(1, 0, 1, 0), std::invalid_argument);
  DeformationGradient f(2, 0, 0, 0.5);
  CHECK(f.det() == doctest::Approx(1.0));
  CHECK(f.sigma_min() == doctest::Approx(0.5));
  CHECK(f.sigma_max() == doctest::Approx(2.0));
  CHECK(kI.deformed_length({3, 4}) == doctest::Approx(5.0));
}

TEST_CASE("radial forms: pinned values") {
  CHECK(radial_value(LennardJonesTerm{1.0, 1.0}, 1.0) == doctest::Approx(-1.0));
  CHECK(radial_value(LennardJonesTerm{2.0, 1.0}, 1.0) == doctest::Approx(-2.0));
  CHECK(radial_value(LennardJonesTerm{1.0, 1.0}, 0.85) > 0);  // repulsive core
  CHECK(radial_value(LennardJonesTerm{1.0, 1.0}, 3.0) < 0);   // attractive tail
  CHECK(std::abs(radial_value(LennardJonesTerm{1.0, 1.0}, 8.0)) < 1e-4);
  CHECK(radial_value(InversePowerTerm{2.0, 4.0}, 2.0) ==
        doctest::Approx(2.0 / 16.0));
  CHECK(radial_value(ConstantTerm{-0.5}, 7.0) == doctest::Approx(-0.5));
}

TEST_CASE("finite table validation") {
  CHECK_THROWS_AS(FiniteTable({}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteTable({{{0, 0}, ConstantTerm{1}}}),
                  std::invalid_argument);
  // missing mirror bond
  CHECK_THROWS_AS(FiniteTable({{{1, 0}, ConstantTerm{1}}}),
                  std::invalid_argument);
  // symmetrize fills it in
  FiniteTable t({{{1, 0}, ConstantTerm{1}}}, /*symmetrize=*/true);
  CHECK(t.entries().size() == 2);
  CHECK(t.max_norm_sq() == 1);
  // conflicting values on mirrored bonds
  CHECK_THROWS_AS(FiniteTable({{{1, 0}, ConstantTerm{1}},
                               {{-1, 0}, ConstantTerm{2}}}),
                  std::invalid_argument);
  CHECK(nn_nnn_table().max_norm_sq() == 2);
}

TEST_CASE("radial potential envelopes and truncation radius") {
  CHECK_THROWS_AS(RadialPotential(InversePowerTerm{1.0, 2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(RadialPotential(ConstantTerm{1.0}), std::invalid_argument);

  RadialPotential lj{LennardJonesTerm{1.0, 1.0}};
  double r1 = truncation_radius(Potential{lj}, kI, 1e-3);
  double r2 = truncation_radius(Potential{lj}, kI, 1e-6);
  CHECK(r1 > 1.0);
  CHECK(r2 > r1);  // tighter tolerance reaches farther

  // a finite table is already truncated
  CHECK(truncation_radius(Potential{nn_table()}, kI, 1e-12) ==
        doctest::Approx(1.0));

  // absurd tolerance would need an astronomically large bond set
  CHECK_THROWS_AS(truncation_radius(Potential{lj}, kI, 1e-15),
                  std::invalid_argument);
}

TEST_CASE("truncation radius really bounds the discarded tail") {
  RadialPotential lj{LennardJonesTerm{1.0, 1.0}};
  double eps = 1e-3;
  double rho = truncation_radius(Potential{lj}, kI, eps);
  // sum the weighted tail a good way beyond rho and check it stays below eps
  KahanSum tail;
  int lim = (int)std::ceil(rho) + 60;
  for (i64 x = -lim; x <= lim; ++x)
    for (i64 y = -lim; y <= lim; ++y) {
      double r2 = (double)(x * x + y * y);
      if (r2 <= rho * rho || is_zero(Vec2i{x, y})) continue;
      tail.add(r2 * std::abs(radial_value(LennardJonesTerm{1.0, 1.0},
                                          std::sqrt(r2))));
    }
  CHECK(tail.value() < eps);
}

TEST_CASE("stored energy and surface densities: nearest-neighbour values") {
  FiniteTable nn = nn_table();
  Potential pot{nn};
  CHECK(stored_energy(kI, pot) == doctest::Approx(-2.0));

  CHECK(surface_density_faceted(kI, {1, 0}, pot) == doctest::Approx(-0.5));
  CHECK(surface_density_faceted(kI, {1, 1}, pot) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(surface_density_continuous(kI, {1, 0}, pot) == doctest::Approx(0.5));
  double s = 1.0 / std::sqrt(2.0);
  CHECK(surface_density_continuous(kI, {s, s}, pot) == doctest::Approx(s));
}

TEST_CASE("lattice spacing weight") {
  CHECK(lattice_spacing_weight(TaggedNormal::rational({3, 4})) ==
        doctest::Approx(0.2));
  CHECK(lattice_spacing_weight(TaggedNormal::rational({6, 8})) ==
        doctest::Approx(0.2));  // direction is reduced first
  CHECK(lattice_spacing_weight(TaggedNormal::irrational(0.7)) == 0.0);
  CHECK_THROWS_AS(TaggedNormal::irrational(0.7).miller(), std::logic_error);
}

TEST_CASE("extended density: jump against the continuous one") {
  Potential pot{nn_table()};
  double w = stored_energy(kI, pot);
  double at_dir = surface_density_extended(kI, TaggedNormal::rational({1, 0}),
                                           pot);
  double nearby = surface_density_extended(kI, TaggedNormal::irrational(1e-7),
                                           pot);
  CHECK(at_dir - nearby == doctest::Approx(0.5 * w).epsilon(1e-5));
  // off lattice directions it coincides with the continuous density
  CHECK(nearby == doctest::Approx(surface_density_continuous(
                      kI, {std::cos(1e-7), std::sin(1e-7)}, pot)));
}

TEST_CASE("faceted density decomposes into continuous part plus bulk term") {
  auto g = rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<TableEntry> entries;
    if (!random_table_within(g, Rat(26), entries)) continue;
    FiniteTable table(entries, /*symmetrize=*/true);
    Potential pot{table};
    DeformationGradient f = random_deformation(g);
    double w = stored_energy(f, pot);
    Vec2i n{rand_int(g, -50, 50), rand_int(g, -50, 50)};
    if (is_zero(n)) continue;
    double len = norm(reduce(n).primitive);
    double lhs = surface_density_faceted(f, n, pot);
    double rhs = surface_density_continuous(
                     f, {n.x / norm(n), n.y / norm(n)}, pot) +
                 w / (2 * len);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    // extended density agrees with the faceted one on lattice directions
    CHECK(surface_density_extended(f, TaggedNormal::rational(n), pot) ==
          doctest::Approx(lhs).epsilon(1e-10));
    // evenness
    CHECK(surface_density_faceted(f, {-n.x, -n.y}, pot) ==
          doctest::Approx(lhs).epsilon(1e-10));
  }
}

TEST_CASE("corner energy: square corner with nearest neighbours is zero") {
  Potential pot{nn_table()};
  CHECK(vertex_energy(kI, {1, 0}, {0, -1}, pot) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(vertex_energy(kI, {1, 0}, {-1, 0}, pot), std::domain_error);
}

TEST_CASE("exact energy equals brute summation on random instances") {
  auto g = rng(32);
  int done = 0;
  while (done < 40) {
    ConvexLatticePolygon p = random_polygon(g, 25);
    std::vector<TableEntry> entries;
    if (!random_table_within(g, p.delta_sq(), entries)) continue;
    FiniteTable table(entries, /*symmetrize=*/true);
    DeformationGradient f = random_deformation(g);
    EnergyBreakdown b = energy_exact(p, f, table);
    double brute = energy_brute(ConvexRegion{p}, f, Potential{table});
    CHECK(b.total ==
          doctest::Approx(brute).epsilon(1e-10));
    CHECK(b.residual == 0.0);
    CHECK(b.bulk + b.surface + b.corner ==
          doctest::Approx(b.total).epsilon(1e-10));
    ++done;
  }
}

TEST_CASE("exact energy demands bonds shorter than the region threshold") {
  ConvexLatticePolygon sq1 = square_polygon(1);
  CHECK_THROWS_AS(energy_exact(sq1, kI, nn_table()), std::domain_error);
  // dilating the region restores validity
  EnergyBreakdown b = energy_exact(sq1.scaled(3), kI, nn_table());
  CHECK(b.total == doctest::Approx(-24.0));
}

TEST_CASE("scaled decomposition matches the closed form exactly for squares") {
  Potential pot{nn_table()};
  for (i64 k : {1, 2, 3, 7}) {
    EnergyBreakdown b =
        scaled_energy_decomposition(square_polygon(1), k, kI, pot);
    CHECK(b.bulk == doctest::Approx(-2.0 * k * k));
    CHECK(b.surface == doctest::Approx(-2.0 * k));
    CHECK(b.corner == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(b.residual == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(b.total == doctest::Approx(-2.0 * k * (k + 1)));
  }
}

TEST_CASE("brute energy accepts non-polygonal regions") {
  Potential pot{nn_table()};
  Disk d2{{Rat(0), Rat(0)}, Rat(4)};
  // 13 points; 8 ordered pairs in each of the four bond directions
  CHECK(energy_brute(ConvexRegion{d2}, kI, pot) == doctest::Approx(-16.0));
}

TEST_CASE("equilibrium shape: nearest-neighbour crystal is a square") {
  std::vector<Vec2d> v = wulff_shape(kI, Potential{nn_table()}, 64);
  REQUIRE(v.size() == 4);
  double half = 0.5;
  CHECK(v[0].x == doctest::Approx(-half).epsilon(1e-9));
  CHECK(v[0].y == doctest::Approx(-half).epsilon(1e-9));
  for (const Vec2d& q : v) {
    CHECK(std::abs(q.x) == doctest::Approx(half).epsilon(1e-9));
    CHECK(std::abs(q.y) == doctest::Approx(half).epsilon(1e-9));
  }
}

TEST_CASE("equilibrium shape: support constraints hold at every vertex") {
  Potential pot{nn_nnn_table(-1.0, -0.4)};
  int samples = 48;
  std::vector<Vec2d> v = wulff_shape(kI, pot, samples);
  REQUIRE(v.size() >= 4);
  for (int j = 0; j < samples; ++j) {
    double ang = 2 * M_PI * j / samples;
    Vec2d n{std::cos(ang), std::sin(ang)};
    double gamma = surface_density_continuous(kI, n, pot);
    for (const Vec2d& q : v) CHECK(q.x * n.x + q.y * n.y <= gamma + 1e-9);
  }
  CHECK_THROWS_AS(wulff_shape(kI, pot, 8), std::invalid_argument);
}

TEST_CASE("equilibrium shape: negative density is rejected") {
  FiniteTable repulsive({{{1, 0}, ConstantTerm{1.0}},
                         {{0, 1}, ConstantTerm{1.0}}},
                        /*symmetrize=*/true);
  CHECK_THROWS_AS(wulff_shape(kI, Potential{repulsive}, 32),
                  std::domain_error);
}
