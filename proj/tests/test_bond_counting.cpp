#include <doctest.h>

#include "latsurf/bond_count.hpp"
#include "latsurf/polygon.hpp"
#include "latsurf/region.hpp"
#include "test_support.hpp"

using namespace latsurf;
using namespace latsurf::test;

namespace {

// Direct open-triangle counter for staircase_sum semantics: lattice points
// strictly inside the triangle (0,0), (0,k), (alpha,beta).
i64 oracle_staircase(const Rat& alpha, const Rat& beta, i64 k) {
  RatPoint A{Rat(0), Rat(0)}, B{Rat(0), Rat(k)}, C{alpha, beta};
  Rat orient = cross(B - A, C - A);
  if (orient.is_zero()) return 0;
  int s = orient.sign();
  auto inside = [&](const RatPoint& p) {
    return cross(B - A, p - A).sign() == s &&
           cross(C - B, p - B).sign() == s && cross(A - C, p - C).sign() == s;
  };
  i64 x0 = (i64)std::min<i128>(0, alpha.floor());
  i64 x1 = (i64)std::max<i128>(0, alpha.ceil());
  i64 y0 = (i64)std::min<i128>(0, beta.floor());
  i64 y1 = (i64)std::max<i128>({(i128)k, beta.ceil()});
  i64 acc = 0;
  for (i64 x = x0; x <= x1; ++x)
    for (i64 y = y0; y <= y1; ++y)
      if (inside(RatPoint{Rat(x), Rat(y)})) ++acc;
  return acc;
}

const ConvexLatticePolygon kSquare3 = square_polygon(3);
const ConvexLatticePolygon kTri5({{0, 0}, {5, 0}, {0, 5}});

}  // namespace

TEST_CASE("staircase sum: pinned values and edge cases") {
  CHECK(staircase_sum(Rat(2), Rat(0), 3) == 1);
  CHECK(staircase_sum(Rat(0), Rat(7, 2), 4) == 0);
  CHECK(staircase_sum(Rat(-6), Rat(3), 1) == 1);
  CHECK(staircase_sum(Rat(-3), Rat(1), 1) == 0);
  CHECK(staircase_sum(Rat(-4), Rat(-2), 2) == 1);
  CHECK(staircase_sum(Rat(-4), Rat(0), 2) == 1);
  CHECK_THROWS_AS(staircase_sum(Rat(1), Rat(1), 0), std::invalid_argument);
}

TEST_CASE("staircase sum equals open-triangle enumeration") {
  auto g = rng(21);
  for (int trial = 0; trial < 400; ++trial) {
    Rat alpha(rand_int(g, -40, 40), rand_int(g, 1, 6));
    Rat beta(rand_int(g, -40, 40), rand_int(g, 1, 6));
    i64 k = rand_int(g, 1, 5);
    CAPTURE(alpha.str());
    CAPTURE(beta.str());
    CAPTURE(k);
    CHECK(staircase_sum(alpha, beta, k) == oracle_staircase(alpha, beta, k));
  }
}

TEST_CASE("sector indicator: strict sign convention") {
  CHECK(sector_indicator({1, 0}, {1, 0}, {0, 1}) == 0);  // grazing is out
  CHECK(sector_indicator({1, -1}, {1, 0}, {0, 1}) == 1);
  CHECK(sector_indicator({-1, 1}, {1, 0}, {0, 1}) == 1);
  CHECK(sector_indicator({1, 1}, {1, 0}, {0, 1}) == 0);
  CHECK(sector_indicator({-1, -1}, {1, 0}, {0, 1}) == 0);
}

TEST_CASE("corner triangle construction") {
  CHECK_THROWS_AS(corner_triangle({1, 1}, {1, 0}, {-2, 0}), std::domain_error);
  CornerTriangle t = corner_triangle({2, 1}, {0, 1}, {1, 1});
  CHECK(t.k == 1);
  // exit point lies on the incoming facet line through w
  CHECK(dot(t.q, Vec2i{1, 1}) == Rat(3));
}

TEST_CASE("corner bond counts match open-triangle enumeration") {
  auto g = rng(22);
  for (int trial = 0; trial < 400; ++trial) {
    CornerSpec cs = random_corner_spec(g);
    CAPTURE(cs.w.x);
    CAPTURE(cs.w.y);
    CAPTURE(cs.n.x);
    CAPTURE(cs.n.y);
    CAPTURE(cs.m.x);
    CAPTURE(cs.m.y);
    CHECK(triangle_interior_count(cs.w, cs.n, cs.m) ==
          oracle_corner_triangle_count(cs.w, cs.n, cs.m));
  }
  // a bond that does not exit through the sector is rejected
  CHECK_THROWS_AS(triangle_interior_count({1, 0}, {1, 0}, {0, 1}),
                  std::domain_error);
}

TEST_CASE("outward crossing count: fixtures and hull-difference oracle") {
  CHECK(outward_crossing_count(kSquare3, {1, 1}) == 7);
  CHECK(outward_crossing_count(kSquare3, {1, 0}) == 4);
  CHECK(outward_crossing_count(kSquare3, {1, 2}) == 10);
  auto g = rng(23);
  for (int trial = 0; trial < 150; ++trial) {
    ConvexLatticePolygon p = random_polygon(g, 20);
    Vec2i w{rand_int(g, -6, 6), rand_int(g, -6, 6)};
    if (is_zero(w)) continue;
    CHECK(outward_crossing_count(p, w) == oracle_outward_crossing(p, w));
  }
}

TEST_CASE("straddle count: fixtures") {
  CHECK(straddle_count(kSquare3, {1, 1}) == 0);
  CHECK(straddle_count(kSquare3, {1, 2}) == 0);
  CHECK(straddle_count(kTri5, {2, 1}) == 1);
  CHECK(straddle_count(kTri5, {2, 2}) == 4);
  // bond exactly at the validity threshold is rejected
  ConvexLatticePolygon tri4({{0, 0}, {4, 0}, {0, 4}});
  CHECK_THROWS_AS(straddle_count(tri4, {2, 2}), std::domain_error);
}

TEST_CASE("straddle count equals the outside-outside segment census") {
  auto g = rng(24);
  int done = 0;
  while (done < 120) {
    ConvexLatticePolygon p = random_polygon(g, 15);
    Vec2i w = random_short_bond(g, p);
    if (is_zero(w)) continue;                   // polygon too thin
    if (parallel_to_some_edge(p, w)) continue;  // transversal directions only
    CAPTURE(w.x);
    CAPTURE(w.y);
    CHECK(straddle_count(p, w) == oracle_straddle_segment(p, w));
    ++done;
  }
}

TEST_CASE("closed-form bond count: fixtures") {
  CHECK(bond_number(kSquare3, {1, 1}) == 9);
  CHECK(bond_number(kSquare3, {1, 0}) == 12);
  CHECK(bond_number(kSquare3, {1, 2}) == 6);
  CHECK(bond_number(kTri5, {2, 1}) == 6);
  CHECK(bond_number(kTri5, {2, 2}) == 3);
}

TEST_CASE("closed-form bond count equals enumeration; symmetry; domain") {
  auto g = rng(25);
  for (int trial = 0; trial < 200; ++trial) {
    ConvexLatticePolygon p = random_polygon(g, 18);
    Vec2i w = random_short_bond(g, p);
    if (is_zero(w)) continue;
    i64 closed = bond_number(p, w);
    CHECK(closed == bond_number_brute(ConvexRegion{p}, w));
    CHECK(closed == bond_number(p, Vec2i{-w.x, -w.y}));
  }
  CHECK_THROWS_AS(bond_number(kSquare3, {0, 0}), std::domain_error);
  CHECK_THROWS_AS(bond_number(kSquare3, {3, 0}), std::domain_error);
  CHECK_THROWS_AS(bond_number(kSquare3, {5, 5}), std::domain_error);
}

TEST_CASE("brute bond count on non-polygonal regions") {
  Disk d2{{Rat(0), Rat(0)}, Rat(4)};
  CHECK(bond_number_brute(ConvexRegion{d2}, {0, 1}) == 8);
  CHECK(bond_number_brute(ConvexRegion{d2}, {4, 0}) == 1);  // (-2,0)->(2,0)
  CHECK(bond_number_brute(ConvexRegion{d2}, {5, 0}) == 0);
}
