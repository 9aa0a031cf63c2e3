#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace latsurf {

using i64 = long long;
using i128 = __int128;

inline i128 iabs(i128 v) { return v < 0 ? -v : v; }

inline i128 gcd128(i128 a, i128 b) {
  a = iabs(a);
  b = iabs(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// floor(n / d), d > 0, exact for negative n as well
inline i128 floor_div(i128 n, i128 d) {
  i128 q = n / d;
  if (n % d != 0 && ((n < 0) != (d < 0))) --q;
  return q;
}

inline i128 ceil_div(i128 n, i128 d) { return -floor_div(-n, d); }

inline std::string to_string_i128(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  std::string s;
  while (v != 0) {
    int digit = (int)iabs(v % 10);
    s.insert(s.begin(), char('0' + digit));
    v /= 10;
  }
  if (neg) s.insert(s.begin(), '-');
  return s;
}

// Exact rational number over 128-bit integers, always normalized with a
// positive denominator.  Magnitudes in this project stay far below the
// overflow boundary (coordinates and Miller indices are small; dilation
// denominators are capped by rationalize()).
class Rat {
 public:
  Rat() : num_(0), den_(1) {}
  Rat(i64 n) : num_(n), den_(1) {}          // NOLINT: implicit by design
  Rat(i128 n, i128 d) : num_(n), den_(d) { normalize(); }

  static Rat of(i64 n, i64 d) { return Rat((i128)n, (i128)d); }

  i128 num() const { return num_; }
  i128 den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }

  i128 floor() const { return floor_div(num_, den_); }
  i128 ceil() const { return ceil_div(num_, den_); }

  Rat abs() const { return Rat(iabs(num_), den_); }

  double to_double() const { return (double)num_ / (double)den_; }

  std::string str() const {
    if (den_ == 1) return to_string_i128(num_);
    return to_string_i128(num_) + "/" + to_string_i128(den_);
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return Rat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return Rat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return Rat(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_ == 0) throw std::domain_error("Rat: division by zero");
    return Rat(a.num_ * b.den_, a.den_ * b.num_);
  }
  Rat operator-() const { return Rat(-num_, den_); }

  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

 private:
  void normalize() {
    if (den_ == 0) throw std::domain_error("Rat: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    i128 g = gcd128(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  i128 num_, den_;
};

// Best rational approximation of x with denominator <= max_den, by continued
// fractions.  Exact whenever x is itself such a rational (e.g. dyadic scale
// factors); otherwise the error is below 1/max_den^2.
inline Rat rationalize(double x, i64 max_den = (1LL << 26)) {
  if (!std::isfinite(x)) throw std::domain_error("rationalize: non-finite value");
  bool neg = x < 0;
  double r = neg ? -x : x;
  i128 p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int it = 0; it < 64; ++it) {
    double fa = std::floor(r);
    if (fa > 9e17) throw std::domain_error("rationalize: value too large");
    i128 a = (i128)(i64)fa;
    i128 p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double frac = r - fa;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  Rat out(p1, q1);
  return neg ? -out : out;
}

// Sum of floor((a*i + b)/m) over i = 0..n-1.  Classic Euclidean-descent
// algorithm; runs in O(log) regardless of n.
inline i128 floor_sum(i128 n, i128 m, i128 a, i128 b) {
  if (n <= 0) return 0;
  if (m <= 0) throw std::domain_error("floor_sum: modulus must be positive");
  i128 ans = 0;
  if (a < 0) {
    i128 a2 = a % m;
    if (a2 < 0) a2 += m;
    ans -= n * (n - 1) / 2 * ((a2 - a) / m);
    a = a2;
  }
  if (b < 0) {
    i128 b2 = b % m;
    if (b2 < 0) b2 += m;
    ans -= n * ((b2 - b) / m);
    b = b2;
  }
  while (true) {
    if (a >= m) {
      ans += n * (n - 1) / 2 * (a / m);
      a %= m;
    }
    if (b >= m) {
      ans += n * (b / m);
      b %= m;
    }
    i128 y_max = a * n + b;
    if (y_max < m) break;
    n = y_max / m;
    b = y_max % m;
    std::swap(m, a);
  }
  return ans;
}

// Sum of floor(p*j/q) over j = 1..n, q > 0.
inline i128 sum_floor_linear(i128 n, i128 p, i128 q) {
  return floor_sum(n, q, p, p);
}

// Sum of ceil(p*j/q) over j = 1..n, q > 0.
inline i128 sum_ceil_linear(i128 n, i128 p, i128 q) {
  return -sum_floor_linear(n, -p, q);
}

}  // namespace latsurf
