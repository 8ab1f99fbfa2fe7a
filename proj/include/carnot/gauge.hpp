#pragma once

#include "carnot/group.hpp"

#include <cstdint>
#include <vector>

namespace carnot {

/// Box gauge N(p) = max_i (kappa_i |layer_i(p)|)^{1/i} and the distance
/// d(x, y) = N(x^{-1} y). Left-invariant, symmetric and homogeneous by
/// construction; kappa is calibrated so the triangle inequality holds.
class HomogeneousDistance {
public:
  /// kappa_1 = 1 and a common kappa for layers >= 2, chosen by halving from
  /// 1 until the largest sampled N(pq) / (N(p) + N(q)) is <= 1, then divided
  /// by 1.05.
  static HomogeneousDistance calibrate(const CarnotGroup &g, std::uint64_t seed = 0x5eed,
                                       int pairs = 20000);

  HomogeneousDistance(const CarnotGroup &g, std::vector<double> kappa);

  double norm(const Point &p) const;
  double operator()(const Point &x, const Point &y) const;
  /// N(p) < radius, decided layer by layer without fractional powers so
  /// that dyadic dilations commute with it exactly.
  bool in_ball(const Point &p, double radius) const;

  const std::vector<double> &kappa() const { return kappa_; }
  /// Largest sampled N(pq) / (N(p) + N(q)) at the final kappa.
  double triangle_ratio() const { return triangle_ratio_; }

  /// Coordinate box containing B(identity, radius).
  Box ball_bounds(double radius) const;
  /// Coordinate box containing B(center, radius).
  Box ball_bounds(const Point &center, double radius) const;

  const CarnotGroup &group() const { return *g_; }

private:
  const CarnotGroup *g_;
  std::vector<double> kappa_;
  double triangle_ratio_ = 0.0;
};

/// Worst ratio N(pq) / (N(p) + N(q)) found over random pairs plus a local
/// ascent from the worst candidates.
double max_triangle_ratio(const HomogeneousDistance &d, std::uint64_t seed, int pairs);

} // namespace carnot
