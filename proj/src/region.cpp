#include "latsurf/region.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace latsurf {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Angular order of integer vectors, counterclockwise starting at the +x axis.
int angle_half(Vec2i v) {
  if (v.y > 0 || (v.y == 0 && v.x > 0)) return 0;
  return 1;
}

bool angle_less(Vec2i a, Vec2i b) {
  int ha = angle_half(a), hb = angle_half(b);
  if (ha != hb) return ha < hb;
  i128 cr = cross(a, b);
  if (cr != 0) return cr > 0;
  return false;
}

int angle_half(const RatPoint& v) {
  Rat zero(0);
  if (v.y > zero || (v.y == zero && v.x > zero)) return 0;
  return 1;
}

bool rat_point_less_lex(const RatPoint& a, const RatPoint& b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

}  // namespace

// ---------------------------------------------------------------------------
// RationalPolygon

RationalPolygon::RationalPolygon(std::vector<RationalHalfPlane> planes) {
  if (planes.size() < 3)
    throw std::invalid_argument(
        "half-plane intersection: need at least three half-planes");

  // Normalize to coprime normals and keep the tightest offset per direction.
  std::map<Vec2i, Rat> tightest;
  for (const auto& hp : planes) {
    PrimitiveDecomposition d = reduce(hp.normal);  // throws on zero normal
    Rat off = hp.offset / Rat(d.g);
    auto it = tightest.find(d.primitive);
    if (it == tightest.end())
      tightest.emplace(d.primitive, off);
    else if (off < it->second)
      it->second = off;
  }

  hp_.clear();
  for (const auto& [n, off] : tightest) hp_.push_back({n, off});
  std::sort(hp_.begin(), hp_.end(),
            [](const RationalHalfPlane& a, const RationalHalfPlane& b) {
              return angle_less(a.normal, b.normal);
            });

  // Bounded iff the normal directions leave no angular gap of pi or more.
  if (hp_.size() < 3)
    throw std::invalid_argument("half-plane intersection: unbounded region");
  for (size_t i = 0; i < hp_.size(); ++i) {
    Vec2i a = hp_[i].normal;
    Vec2i b = hp_[(i + 1) % hp_.size()].normal;
    if (cross(a, b) <= 0)
      throw std::invalid_argument("half-plane intersection: unbounded region");
  }

  // Vertices: pairwise line intersections that satisfy every constraint.
  std::vector<RatPoint> cand;
  for (size_t i = 0; i < hp_.size(); ++i) {
    for (size_t j = i + 1; j < hp_.size(); ++j) {
      Vec2i ni = hp_[i].normal, nj = hp_[j].normal;
      i128 det = cross(ni, nj);
      if (det == 0) continue;
      Rat d(det);
      RatPoint p{(hp_[i].offset * Rat(nj.y) - hp_[j].offset * Rat(ni.y)) / d,
                 (hp_[j].offset * Rat(ni.x) - hp_[i].offset * Rat(nj.x)) / d};
      bool ok = true;
      for (const auto& hp : hp_) {
        if (p.x * Rat(hp.normal.x) + p.y * Rat(hp.normal.y) > hp.offset) {
          ok = false;
          break;
        }
      }
      if (ok) cand.push_back(p);
    }
  }
  std::sort(cand.begin(), cand.end(), rat_point_less_lex);
  cand.erase(std::unique(cand.begin(), cand.end(),
                         [](const RatPoint& a, const RatPoint& b) {
                           return a.x == b.x && a.y == b.y;
                         }),
             cand.end());
  if (cand.size() < 3)
    throw std::invalid_argument(
        "half-plane intersection: empty or degenerate region");

  // Counterclockwise cycle around the centroid, then the shoelace area.
  RatPoint centroid{Rat(0), Rat(0)};
  for (const auto& p : cand) centroid = centroid + p;
  Rat inv_n(1, static_cast<i64>(cand.size()));
  centroid = RatPoint{centroid.x * inv_n, centroid.y * inv_n};
  std::sort(cand.begin(), cand.end(),
            [&](const RatPoint& a, const RatPoint& b) {
              RatPoint ra = a - centroid, rb = b - centroid;
              int ha = angle_half(ra), hb = angle_half(rb);
              if (ha != hb) return ha < hb;
              return cross(ra, rb) > Rat(0);
            });
  verts_ = std::move(cand);

  Rat twice_area(0);
  for (size_t i = 0; i < verts_.size(); ++i) {
    const RatPoint& a = verts_[i];
    const RatPoint& b = verts_[(i + 1) % verts_.size()];
    twice_area = twice_area + cross(a, b);
  }
  area_ = twice_area / Rat(2);
  if (!(area_ > Rat(0)))
    throw std::invalid_argument(
        "half-plane intersection: empty or degenerate region");
}

bool RationalPolygon::contains(Vec2i p) const {
  for (const auto& hp : hp_) {
    if (Rat(dot(p, hp.normal)) > hp.offset) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// MixedRegion

MixedRegion::MixedRegion(RatPoint center, Rat radius_sq,
                         std::vector<RationalHalfPlane> chords)
    : center_(std::move(center)), radius_sq_(std::move(radius_sq)) {
  if (!(radius_sq_ > Rat(0)))
    throw std::invalid_argument("mixed region: radius must be positive");

  double r = std::sqrt(radius_sq_.to_double());
  double cx = center_.x.to_double(), cy = center_.y.to_double();

  for (const auto& raw : chords) {
    PrimitiveDecomposition d = reduce(raw.normal);
    Vec2i n = d.primitive;
    Rat off = raw.offset / Rat(d.g);

    // The chord line must cut the circle properly: squared distance of the
    // line from the center strictly between 0 and the squared radius.
    Rat h_num = off - (center_.x * Rat(n.x) + center_.y * Rat(n.y));
    Rat n2(norm_sq(n));
    if (h_num * h_num == radius_sq_ * n2)
      throw std::invalid_argument("mixed region: chord is tangent to the circle");
    if (h_num * h_num > radius_sq_ * n2)
      throw std::invalid_argument("mixed region: chord does not cut the circle");

    // Lattice points exist on the line only for an integer offset.
    if (off.den() != 1)
      throw std::invalid_argument(
          "mixed region: chord endpoints are not lattice points");
    i64 c = static_cast<i64>(off.num());

    // Base lattice point on the line and the line direction, shifted so the
    // intersection parameters stay small.
    i64 g, s, t;
    ext_gcd(n.x, n.y, g, s, t);
    Vec2i p0{static_cast<i64>(s) * c, static_cast<i64>(t) * c};
    Vec2i dir{-n.y, n.x};
    {
      Rat along = (Rat(p0.x) - center_.x) * Rat(dir.x) +
                  (Rat(p0.y) - center_.y) * Rat(dir.y);
      i64 shift = static_cast<i64>((along / Rat(norm_sq(dir))).floor());
      p0 = p0 - Vec2i{shift * dir.x, shift * dir.y};
    }

    // Endpoints: integer roots of |p0 + t*dir - center|^2 = radius^2.
    Rat A(norm_sq(dir));
    RatPoint rel = to_rat(p0) - center_;
    Rat B = (rel.x * Rat(dir.x) + rel.y * Rat(dir.y)) * Rat(2);
    Rat C = norm_sq(rel) - radius_sq_;
    double ad = A.to_double(), bd = B.to_double(), cd = C.to_double();
    double disc = bd * bd - 4.0 * ad * cd;
    if (disc < 0) disc = 0;
    double sq = std::sqrt(disc);
    std::vector<i64> roots;
    for (double guess : {(-bd - sq) / (2 * ad), (-bd + sq) / (2 * ad)}) {
      i64 base = static_cast<i64>(std::llround(guess));
      for (i64 tt = base - 2; tt <= base + 2; ++tt) {
        Rat val = A * Rat(tt) * Rat(tt) + B * Rat(tt) + C;
        if (val == Rat(0) &&
            std::find(roots.begin(), roots.end(), tt) == roots.end())
          roots.push_back(tt);
      }
    }
    if (roots.size() != 2)
      throw std::invalid_argument(
          "mixed region: chord endpoints are not lattice points");

    Vec2i e0 = p0 + Vec2i{roots[0] * dir.x, roots[0] * dir.y};
    Vec2i e1 = p0 + Vec2i{roots[1] * dir.x, roots[1] * dir.y};
    // Boundary runs counterclockwise, so the chord is traversed along `dir`
    // (the outward normal is its clockwise perpendicular).
    if (dot(e1 - e0, dir) < 0) std::swap(e0, e1);

    ChordInfo info;
    info.normal = n;
    info.offset = off;
    info.p_begin = e0;
    info.p_end = e1;
    info.cap_begin = std::atan2(static_cast<double>(e0.y) - cy,
                                static_cast<double>(e0.x) - cx);
    double end_angle = std::atan2(static_cast<double>(e1.y) - cy,
                                  static_cast<double>(e1.x) - cx);
    while (end_angle <= info.cap_begin) end_angle += kTwoPi;
    info.cap_end = end_angle;
    info.length = norm(e1 - e0);
    chords_.push_back(std::move(info));
  }

  // Caps removed by distinct chords must not overlap (touching at a shared
  // endpoint is fine).
  std::sort(chords_.begin(), chords_.end(),
            [](const ChordInfo& a, const ChordInfo& b) {
              return a.cap_begin < b.cap_begin;
            });
  const double tol = 1e-9;
  for (size_t i = 0; i + 1 < chords_.size(); ++i) {
    if (chords_[i + 1].cap_begin < chords_[i].cap_end - tol)
      throw std::invalid_argument("mixed region: chords cut overlapping arcs");
  }
  if (chords_.size() >= 2) {
    const ChordInfo& last = chords_.back();
    if (chords_.front().cap_begin + kTwoPi < last.cap_end - tol)
      throw std::invalid_argument("mixed region: chords cut overlapping arcs");
  }
  if (!chords_.empty() &&
      chords_.front().cap_end - chords_.front().cap_begin >= kTwoPi - tol)
    throw std::invalid_argument("mixed region: chord removes the whole circle");

  (void)r;
}

std::vector<std::pair<double, double>> MixedRegion::arcs() const {
  if (chords_.empty()) return {{0.0, kTwoPi}};
  std::vector<std::pair<double, double>> kept;
  for (size_t i = 0; i < chords_.size(); ++i) {
    double a = chords_[i].cap_end;
    double b = (i + 1 < chords_.size()) ? chords_[i + 1].cap_begin
                                        : chords_.front().cap_begin + kTwoPi;
    if (b - a > 1e-12) kept.push_back({a, b});
  }
  return kept;
}

bool MixedRegion::contains(Vec2i p) const {
  if (norm_sq(to_rat(p) - center_) > radius_sq_) return false;
  for (const auto& ch : chords_) {
    if (Rat(dot(p, ch.normal)) > ch.offset) return false;
  }
  return true;
}

double MixedRegion::measure() const {
  double r2 = radius_sq_.to_double();
  double r = std::sqrt(r2);
  double area = M_PI * r2;
  for (const auto& ch : chords_) {
    double h = (ch.offset -
                (center_.x * Rat(ch.normal.x) + center_.y * Rat(ch.normal.y)))
                   .to_double() /
               norm(ch.normal);
    area -= r2 * std::acos(std::clamp(h / r, -1.0, 1.0)) -
            h * std::sqrt(std::max(r2 - h * h, 0.0));
  }
  return area;
}

MixedRegion MixedRegion::scaled(i64 k) const {
  if (k < 1)
    throw std::invalid_argument("mixed region: scale factor must be positive");
  Rat rk(k);
  std::vector<RationalHalfPlane> chords;
  chords.reserve(chords_.size());
  for (const auto& ch : chords_) chords.push_back({ch.normal, ch.offset * rk});
  return MixedRegion(RatPoint{center_.x * rk, center_.y * rk},
                     radius_sq_ * rk * rk, std::move(chords));
}

// ---------------------------------------------------------------------------
// Column spans

namespace {

// One column-interval problem: linear constraints a*x + b*y <= c plus at most
// one quadratic constraint (y - cy)^2 <= A - B*(x - cx)^2.
struct SpanProblem {
  i64 xlo = 0, xhi = -1;
  std::vector<RationalHalfPlane> lin;
  struct Quad {
    Rat cx, cy, A, B;
  };
  std::vector<Quad> quad;
};

std::vector<ColumnSpan> solve_spans(const SpanProblem& sp) {
  std::vector<ColumnSpan> spans;
  for (i64 x = sp.xlo; x <= sp.xhi; ++x) {
    bool empty = false;
    bool has_lo = false, has_hi = false;
    i128 ylo = 0, yhi = 0;
    auto raise_lo = [&](i128 v) {
      if (!has_lo || v > ylo) ylo = v;
      has_lo = true;
    };
    auto lower_hi = [&](i128 v) {
      if (!has_hi || v < yhi) yhi = v;
      has_hi = true;
    };

    for (const auto& hp : sp.lin) {
      i64 a = hp.normal.x, b = hp.normal.y;
      if (b == 0) {
        if (Rat(a) * Rat(x) > hp.offset) {
          empty = true;
          break;
        }
        continue;
      }
      Rat bound = (hp.offset - Rat(a) * Rat(x)) / Rat(b);
      if (b > 0)
        lower_hi(bound.floor());
      else
        raise_lo(bound.ceil());
    }
    if (empty) continue;

    for (const auto& q : sp.quad) {
      Rat dx = Rat(x) - q.cx;
      Rat rhs = q.A - q.B * dx * dx;
      if (rhs < Rat(0)) {
        empty = true;
        break;
      }
      auto inside = [&](i128 y) {
        Rat dy = Rat(y) - q.cy;
        return dy * dy <= rhs;
      };
      double s = std::sqrt(rhs.to_double());
      double cyd = q.cy.to_double();
      // Float guesses corrected by the exact test; the guess error is far
      // below the iteration margin at the magnitudes handled here.
      i128 hi = static_cast<i128>(std::floor(cyd + s));
      for (int i = 0; i < 64 && inside(hi + 1); ++i) ++hi;
      for (int i = 0; i < 64 && !inside(hi); ++i) --hi;
      i128 lo = static_cast<i128>(std::ceil(cyd - s));
      for (int i = 0; i < 64 && inside(lo - 1); ++i) --lo;
      for (int i = 0; i < 64 && !inside(lo); ++i) ++lo;
      if (lo > hi) {
        empty = true;
        break;
      }
      raise_lo(lo);
      lower_hi(hi);
    }
    if (empty) continue;

    if (!has_lo || !has_hi)
      throw std::logic_error("column spans: unbounded column");
    if (ylo > yhi) continue;
    spans.push_back(ColumnSpan{x, static_cast<i64>(ylo), static_cast<i64>(yhi)});
  }
  return spans;
}

SpanProblem span_problem(const ConvexLatticePolygon& poly) {
  SpanProblem sp;
  i64 xlo = poly.vertex(0).x, xhi = xlo;
  for (const auto& v : poly.vertices()) {
    xlo = std::min(xlo, v.x);
    xhi = std::max(xhi, v.x);
  }
  sp.xlo = xlo;
  sp.xhi = xhi;
  sp.lin = polygon_halfplanes(poly);
  return sp;
}

SpanProblem span_problem(const RationalPolygon& poly) {
  SpanProblem sp;
  Rat xlo = poly.vertices().front().x, xhi = xlo;
  for (const auto& v : poly.vertices()) {
    if (v.x < xlo) xlo = v.x;
    if (v.x > xhi) xhi = v.x;
  }
  sp.xlo = static_cast<i64>(xlo.ceil());
  sp.xhi = static_cast<i64>(xhi.floor());
  sp.lin = poly.halfplanes();
  return sp;
}

SpanProblem span_problem(const Disk& d) {
  SpanProblem sp;
  double r = d.radius();
  double cx = d.center.x.to_double();
  sp.xlo = static_cast<i64>(std::floor(cx - r)) - 1;
  sp.xhi = static_cast<i64>(std::ceil(cx + r)) + 1;
  sp.quad.push_back({d.center.x, d.center.y, d.radius_sq, Rat(1)});
  return sp;
}

SpanProblem span_problem(const Ellipse& e) {
  SpanProblem sp;
  double a = std::sqrt(e.a_sq.to_double());
  double cx = e.center.x.to_double();
  sp.xlo = static_cast<i64>(std::floor(cx - a)) - 1;
  sp.xhi = static_cast<i64>(std::ceil(cx + a)) + 1;
  // (y-cy)^2 <= b^2 * (1 - (x-cx)^2 / a^2)
  sp.quad.push_back({e.center.x, e.center.y, e.b_sq, e.b_sq / e.a_sq});
  return sp;
}

SpanProblem span_problem(const MixedRegion& m) {
  SpanProblem sp;
  double r = m.radius();
  double cx = m.center().x.to_double();
  sp.xlo = static_cast<i64>(std::floor(cx - r)) - 1;
  sp.xhi = static_cast<i64>(std::ceil(cx + r)) + 1;
  sp.quad.push_back({m.center().x, m.center().y, m.radius_sq(), Rat(1)});
  for (const auto& ch : m.chords()) sp.lin.push_back({ch.normal, ch.offset});
  return sp;
}

}  // namespace

std::vector<RationalHalfPlane> polygon_halfplanes(const ConvexLatticePolygon& p) {
  std::vector<RationalHalfPlane> planes;
  planes.reserve(p.facets().size());
  for (const auto& f : p.facets())
    planes.push_back({f.miller_normal, Rat(dot(f.a, f.miller_normal))});
  return planes;
}

std::vector<ColumnSpan> column_spans(const ConvexRegion& region) {
  return std::visit(
      [](const auto& r) { return solve_spans(span_problem(r)); }, region);
}

std::vector<Vec2i> enumerate_lattice_points(const ConvexRegion& region) {
  std::vector<Vec2i> pts;
  for (const auto& s : column_spans(region)) {
    for (i64 y = s.ylo; y <= s.yhi; ++y) pts.push_back({s.x, y});
  }
  return pts;
}

i64 lattice_point_count(const ConvexRegion& region) {
  i64 total = 0;
  for (const auto& s : column_spans(region)) total += s.yhi - s.ylo + 1;
  return total;
}

bool region_contains(const ConvexRegion& region, Vec2i p) {
  return std::visit([&](const auto& r) { return r.contains(p); }, region);
}

double measure(const ConvexRegion& region) {
  struct Visitor {
    double operator()(const ConvexLatticePolygon& p) const {
      return static_cast<double>(p.area2()) / 2.0;
    }
    double operator()(const RationalPolygon& p) const {
      return p.area().to_double();
    }
    double operator()(const Disk& d) const {
      return M_PI * d.radius_sq.to_double();
    }
    double operator()(const Ellipse& e) const {
      return M_PI * std::sqrt(e.a_sq.to_double() * e.b_sq.to_double());
    }
    double operator()(const MixedRegion& m) const { return m.measure(); }
  };
  return std::visit(Visitor{}, region);
}

std::optional<Rat> measure_exact(const ConvexRegion& region) {
  if (const auto* p = std::get_if<ConvexLatticePolygon>(&region))
    return Rat(p->area2(), 2);
  if (const auto* p = std::get_if<RationalPolygon>(&region)) return p->area();
  return std::nullopt;
}

ConvexRegion dilate(const ConvexRegion& region, const Rat& factor) {
  if (!(factor > Rat(0)))
    throw std::invalid_argument("dilate: factor must be positive");
  struct Visitor {
    const Rat& f;
    ConvexRegion operator()(const ConvexLatticePolygon& p) const {
      if (f.den() == 1) return p.scaled(static_cast<i64>(f.num()));
      std::vector<RationalHalfPlane> planes = polygon_halfplanes(p);
      for (auto& hp : planes) hp.offset = hp.offset * f;
      return RationalPolygon(std::move(planes));
    }
    ConvexRegion operator()(const RationalPolygon& p) const {
      std::vector<RationalHalfPlane> planes = p.halfplanes();
      for (auto& hp : planes) hp.offset = hp.offset * f;
      return RationalPolygon(std::move(planes));
    }
    ConvexRegion operator()(const Disk& d) const {
      return Disk(RatPoint{d.center.x * f, d.center.y * f},
                  d.radius_sq * f * f);
    }
    ConvexRegion operator()(const Ellipse& e) const {
      return Ellipse(RatPoint{e.center.x * f, e.center.y * f}, e.a_sq * f * f,
                     e.b_sq * f * f);
    }
    ConvexRegion operator()(const MixedRegion& m) const {
      if (f.den() != 1)
        throw std::domain_error(
            "dilate: mixed regions require integer factors to keep chord "
            "endpoints on the lattice");
      return m.scaled(static_cast<i64>(f.num()));
    }
  };
  return std::visit(Visitor{factor}, region);
}

ConvexRegion dilate(const ConvexRegion& region, double factor) {
  return dilate(region, rationalize(factor));
}

}  // namespace latsurf
