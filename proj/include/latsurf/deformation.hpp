#pragma once

#include <cmath>
#include <stdexcept>

#include "latsurf/lattice.hpp"

namespace latsurf {

// Homogeneous deformation x -> F x with a 2x2 matrix of positive determinant
// (orientation preserving, so the smallest singular value is positive too).
class DeformationGradient {
 public:
  DeformationGradient(double xx, double xy, double yx, double yy)
      : xx_(xx), xy_(xy), yx_(yx), yy_(yy) {
    if (!std::isfinite(xx) || !std::isfinite(xy) || !std::isfinite(yx) ||
        !std::isfinite(yy))
      throw std::invalid_argument("deformation gradient: non-finite entry");
    if (!(det() > 0))
      throw std::invalid_argument(
          "deformation gradient: determinant must be positive");
  }

  static DeformationGradient identity() { return {1, 0, 0, 1}; }

  double xx() const { return xx_; }
  double xy() const { return xy_; }
  double yx() const { return yx_; }
  double yy() const { return yy_; }

  Vec2d apply(Vec2i w) const {
    return {xx_ * (double)w.x + xy_ * (double)w.y,
            yx_ * (double)w.x + yy_ * (double)w.y};
  }

  double deformed_length_sq(Vec2i w) const {
    Vec2d v = apply(w);
    return v.x * v.x + v.y * v.y;
  }
  double deformed_length(Vec2i w) const {
    return std::sqrt(deformed_length_sq(w));
  }

  double det() const { return xx_ * yy_ - xy_ * yx_; }

  // Closed-form singular values: sigma^2 are the eigenvalues of F^T F.
  double sigma_min() const {
    double t = xx_ * xx_ + xy_ * xy_ + yx_ * yx_ + yy_ * yy_;
    double d = det();
    double disc = std::sqrt(std::max(0.0, t * t - 4 * d * d));
    return std::sqrt(0.5 * (t - disc));
  }
  double sigma_max() const {
    double t = xx_ * xx_ + xy_ * xy_ + yx_ * yx_ + yy_ * yy_;
    double d = det();
    double disc = std::sqrt(std::max(0.0, t * t - 4 * d * d));
    return std::sqrt(0.5 * (t + disc));
  }

  friend bool operator==(const DeformationGradient& a,
                         const DeformationGradient& b) {
    return a.xx_ == b.xx_ && a.xy_ == b.xy_ && a.yx_ == b.yx_ &&
           a.yy_ == b.yy_;
  }

 private:
  double xx_, xy_, yx_, yy_;
};

}  // namespace latsurf
