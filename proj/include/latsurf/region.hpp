#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "latsurf/polygon.hpp"

namespace latsurf {

// Closed half-plane  dot(x, normal) <= offset  with an integer normal.
struct RationalHalfPlane {
  Vec2i normal;
  Rat offset;
};

// Bounded intersection of rational half-planes.  Construction normalizes the
// normals, merges parallel constraints, drops redundant ones, verifies
// boundedness and non-emptiness, and computes the exact vertex cycle (CCW).
class RationalPolygon {
 public:
  explicit RationalPolygon(std::vector<RationalHalfPlane> planes);

  const std::vector<RationalHalfPlane>& halfplanes() const { return hp_; }
  const std::vector<RatPoint>& vertices() const { return verts_; }
  Rat area() const { return area_; }
  bool contains(Vec2i p) const;

 private:
  std::vector<RationalHalfPlane> hp_;
  std::vector<RatPoint> verts_;
  Rat area_;
};

// Closed disk with exact rational center and squared radius.
struct Disk {
  RatPoint center;
  Rat radius_sq;

  Disk(RatPoint c, Rat r2) : center(std::move(c)), radius_sq(std::move(r2)) {
    if (!(radius_sq > Rat(0)))
      throw std::invalid_argument("disk: radius must be positive");
  }
  double radius() const { return std::sqrt(radius_sq.to_double()); }
  bool contains(Vec2i p) const {
    return norm_sq(to_rat(p) - center) <= radius_sq;
  }
};

// Axis-aligned closed ellipse with exact squared semi-axes.
struct Ellipse {
  RatPoint center;
  Rat a_sq, b_sq;  // semi-axis along x, along y

  Ellipse(RatPoint c, Rat a2, Rat b2)
      : center(std::move(c)), a_sq(std::move(a2)), b_sq(std::move(b2)) {
    if (!(a_sq > Rat(0)) || !(b_sq > Rat(0)))
      throw std::invalid_argument("ellipse: semi-axes must be positive");
  }
  bool contains(Vec2i p) const {
    RatPoint d = to_rat(p) - center;
    return b_sq * d.x * d.x + a_sq * d.y * d.y <= a_sq * b_sq;
  }
};

// Convex region bounded by arcs of one circle and flat chords with lattice
// point endpoints.  Every chord must cut the circle properly (a tangent line
// is rejected), its endpoints must be lattice points, and the circular caps
// cut off by distinct chords must not overlap, so the boundary alternates
// between full chords and arcs.
class MixedRegion {
 public:
  struct ChordInfo {
    Vec2i normal;        // outward, coprime components
    Rat offset;          // dot(x, normal) <= offset on the region
    Vec2i p_begin, p_end;  // endpoints in CCW boundary order
    double cap_begin, cap_end;  // removed arc, angles with cap_end > cap_begin
    double length;
  };

  MixedRegion(RatPoint center, Rat radius_sq,
              std::vector<RationalHalfPlane> chords);

  const RatPoint& center() const { return center_; }
  const Rat& radius_sq() const { return radius_sq_; }
  double radius() const { return std::sqrt(radius_sq_.to_double()); }
  const std::vector<ChordInfo>& chords() const { return chords_; }

  // Kept boundary arcs as angle intervals [a, b] with b > a.
  std::vector<std::pair<double, double>> arcs() const;

  bool contains(Vec2i p) const;
  double measure() const;

  MixedRegion scaled(i64 k) const;

 private:
  RatPoint center_;
  Rat radius_sq_;
  std::vector<ChordInfo> chords_;
};

using ConvexRegion =
    std::variant<ConvexLatticePolygon, RationalPolygon, Disk, Ellipse, MixedRegion>;

// Lattice points of one grid column x = const: y in [ylo, yhi].
struct ColumnSpan {
  i64 x, ylo, yhi;
};

// Exact per-column lattice intervals covering all lattice points of the
// region (boundary inclusive).  Columns with no lattice point are omitted.
std::vector<ColumnSpan> column_spans(const ConvexRegion& region);

std::vector<Vec2i> enumerate_lattice_points(const ConvexRegion& region);
i64 lattice_point_count(const ConvexRegion& region);

bool region_contains(const ConvexRegion& region, Vec2i p);

double measure(const ConvexRegion& region);

// Exact area for the polygonal kinds; empty for disk/ellipse/mixed.
std::optional<Rat> measure_exact(const ConvexRegion& region);

// Scale the region about the origin by an exact positive factor.  A lattice
// polygon stays a lattice polygon for integer factors and becomes a rational
// half-plane intersection otherwise.  Mixed regions require integer factors.
ConvexRegion dilate(const ConvexRegion& region, const Rat& factor);

// Convenience overload; the factor is converted to an exact rational by
// continued fractions (exact for representable fractions such as 2.5).
ConvexRegion dilate(const ConvexRegion& region, double factor);

// Half-planes of a lattice polygon: (miller normal, dot(normal, vertex)).
std::vector<RationalHalfPlane> polygon_halfplanes(const ConvexLatticePolygon& p);

}  // namespace latsurf
