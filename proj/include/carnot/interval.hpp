#pragma once

#include <algorithm>
#include <cmath>

namespace carnot {

/// Closed interval [lo, hi]. Rounding is not directed; callers that need a
/// guaranteed enclosure widen the final result with `inflate`.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  constexpr Interval() = default;
  constexpr Interval(double v) : lo(v), hi(v) {} // NOLINT: scalars promote
  constexpr Interval(double l, double h) : lo(l), hi(h) {}

  double width() const { return hi - lo; }
  double magnitude() const { return std::max(std::abs(lo), std::abs(hi)); }

  Interval &operator+=(const Interval &o) {
    lo += o.lo;
    hi += o.hi;
    return *this;
  }
  Interval &operator-=(const Interval &o) {
    lo -= o.hi;
    hi -= o.lo;
    return *this;
  }
};

inline Interval operator+(Interval a, const Interval &b) { return a += b; }
inline Interval operator-(Interval a, const Interval &b) { return a -= b; }
inline Interval operator-(const Interval &a) { return {-a.hi, -a.lo}; }

inline Interval operator*(const Interval &a, const Interval &b) {
  const double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
}

inline Interval hull(const Interval &a, const Interval &b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

inline Interval inflate(const Interval &a, double rel = 1e-9, double abs = 1e-12) {
  const double pad = rel * a.magnitude() + abs;
  return {a.lo - pad, a.hi + pad};
}

} // namespace carnot
