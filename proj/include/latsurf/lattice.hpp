#pragma once

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "latsurf/int_rational.hpp"

namespace latsurf {

// Integer lattice vector / point.
struct Vec2i {
  i64 x = 0, y = 0;

  friend Vec2i operator+(Vec2i a, Vec2i b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2i operator-(Vec2i a, Vec2i b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2i operator*(i64 k, Vec2i v) { return {k * v.x, k * v.y}; }
  Vec2i operator-() const { return {-x, -y}; }
  friend bool operator==(Vec2i a, Vec2i b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(Vec2i a, Vec2i b) { return !(a == b); }
  friend bool operator<(Vec2i a, Vec2i b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  }
};

inline i64 dot(Vec2i a, Vec2i b) { return a.x * b.x + a.y * b.y; }
inline i64 cross(Vec2i a, Vec2i b) { return a.x * b.y - a.y * b.x; }
// Clockwise perpendicular: perp(perp(v)) == -v.
inline Vec2i perp(Vec2i v) { return {v.y, -v.x}; }
inline i64 norm_sq(Vec2i v) { return v.x * v.x + v.y * v.y; }
inline double norm(Vec2i v) { return std::sqrt((double)norm_sq(v)); }
inline bool is_zero(Vec2i v) { return v.x == 0 && v.y == 0; }

// Real 2-vector for derived quantities (unit normals, plot vertices).
struct Vec2d {
  double x = 0, y = 0;
};

inline double dot(Vec2d a, Vec2d b) { return a.x * b.x + a.y * b.y; }

// Point with exact rational coordinates.
struct RatPoint {
  Rat x, y;

  friend RatPoint operator+(const RatPoint& a, const RatPoint& b) {
    return {a.x + b.x, a.y + b.y};
  }
  friend RatPoint operator-(const RatPoint& a, const RatPoint& b) {
    return {a.x - b.x, a.y - b.y};
  }
  friend RatPoint operator*(const Rat& k, const RatPoint& p) {
    return {k * p.x, k * p.y};
  }
  friend bool operator==(const RatPoint& a, const RatPoint& b) {
    return a.x == b.x && a.y == b.y;
  }
};

inline RatPoint to_rat(Vec2i v) { return {Rat(v.x), Rat(v.y)}; }
inline Rat dot(const RatPoint& a, Vec2i b) { return a.x * Rat(b.x) + a.y * Rat(b.y); }
inline Rat dot(const RatPoint& a, const RatPoint& b) { return a.x * b.x + a.y * b.y; }
inline Rat cross(const RatPoint& a, const RatPoint& b) { return a.x * b.y - a.y * b.x; }
inline Rat norm_sq(const RatPoint& p) { return p.x * p.x + p.y * p.y; }

struct PrimitiveDecomposition {
  i64 g;            // gcd of |components|
  Vec2i primitive;  // v / g, coprime components
  Vec2i perp;       // perp of the original vector
};

// Split v into gcd * primitive direction; also hands back perp(v).
inline PrimitiveDecomposition reduce(Vec2i v) {
  if (is_zero(v)) throw std::domain_error("reduce: zero vector");
  i64 g = std::gcd(std::llabs(v.x), std::llabs(v.y));
  return {g, {v.x / g, v.y / g}, perp(v)};
}

inline i64 gcd_of(Vec2i v) { return std::gcd(std::llabs(v.x), std::llabs(v.y)); }

// Extended Euclid: returns (g, s, t) with a*s + b*t == g == gcd(|a|,|b|).
inline void ext_gcd(i64 a, i64 b, i64& g, i64& s, i64& t) {
  i64 old_r = a, r = b;
  i64 old_s = 1, s1 = 0;
  i64 old_t = 0, t1 = 1;
  while (r != 0) {
    i64 q = old_r / r;
    i64 tmp = old_r - q * r; old_r = r; r = tmp;
    tmp = old_s - q * s1; old_s = s1; s1 = tmp;
    tmp = old_t - q * t1; old_t = t1; t1 = tmp;
  }
  if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
  g = old_r; s = old_s; t = old_t;
}

// Companion vector u with dot(u, perp(w)) == 1 for a primitive w.  Among the
// solution family u + t*w this picks the minimum-norm one, ties broken by the
// lexicographically smaller (x, y).
inline Vec2i bezout_companion(Vec2i w) {
  if (is_zero(w)) throw std::domain_error("bezout_companion: zero vector");
  if (gcd_of(w) != 1)
    throw std::domain_error("bezout_companion: components are not coprime");
  // dot(u, perp(w)) = u.x*w.y - u.y*w.x = 1
  i64 g, s, t;
  ext_gcd(w.y, -w.x, g, s, t);
  Vec2i u{s, t};
  // minimize |u + t*w|^2; quadratic with real minimum at -dot(u,w)/|w|^2
  double tstar = -(double)dot(u, w) / (double)norm_sq(w);
  Vec2i best = u;
  bool have = false;
  for (i64 k = (i64)std::floor(tstar) - 1; k <= (i64)std::ceil(tstar) + 1; ++k) {
    Vec2i cand = u + k * w;
    if (!have || norm_sq(cand) < norm_sq(best) ||
        (norm_sq(cand) == norm_sq(best) && cand < best)) {
      best = cand;
      have = true;
    }
  }
  return best;
}

}  // namespace latsurf
