#pragma once

#include "carnot/gauge.hpp"
#include "carnot/random.hpp"
#include "carnot/sets.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace carnot {

struct VolumeLawReport {
  std::vector<double> radii;
  std::vector<Estimate> volumes; // Haar volume of B(0, r)
  double slope = 0.0;            // least-squares slope of log vol against log r
  double intercept = 0.0;
  std::uint64_t samples_per_radius = 0;
};

/// Volume of gauge balls B(0, r) by hit-or-miss in ball_bounds(r), one
/// independent stream per radius. Throws DegenerateBall for r <= 0.
VolumeLawReport ball_volume_law(const HomogeneousDistance &d, const std::vector<double> &radii,
                                std::uint64_t samples, std::uint64_t seed);

struct DensityProfile {
  Point point;
  std::vector<double> radii;   // strictly decreasing
  std::vector<Estimate> ratios; // mu(E n B(x, r)) / mu(B(x, r))
  std::vector<double> h_values; // min(ratio, 1 - ratio)
};

/// Uniform points of B(x, r) = x B(0, r) by rejection from ball_bounds(r);
/// independent draws per radius. Throws DegenerateBall for a non-positive
/// radius and InvalidArgument unless radii strictly decrease.
DensityProfile density_profile(const SetOracle &e, const Point &x, const std::vector<double> &radii,
                               std::uint64_t samples_per_radius, const HomogeneousDistance &d,
                               std::uint64_t seed);

enum class PointClass { interior, exterior, boundary, undetermined };
std::string to_string(PointClass c);

/// Radii below r_min are ignored. boundary: h >= eps at every remaining
/// radius. Otherwise interior (exterior) when the ratio at the smallest
/// remaining radius is >= 1 - eps (<= eps). Throws InvalidArgument unless
/// 0 < eps < 1/2.
PointClass classify_point(const DensityProfile &profile, double eps, double r_min);

struct ScanPoint {
  DensityProfile profile;
  PointClass cls = PointClass::undetermined;
};

struct BoundaryScan {
  Box box;
  double grid_step = 0.0;
  double eps = 0.0;
  double r_min = 0.0;
  std::uint64_t samples_per_radius = 0;
  std::uint64_t seed = 0;
  std::vector<int> shape; // grid points per axis
  std::vector<ScanPoint> points;
};

/// Classifies every point of the grid box.lo + step * k (inclusive of the
/// upper face up to rounding). Point i uses seed mix64(seed + i).
BoundaryScan boundary_scan(const SetOracle &e, const Box &box, double grid_step, double eps,
                           const std::vector<double> &radii, double r_min,
                           std::uint64_t samples_per_radius, const HomogeneousDistance &d,
                           std::uint64_t seed, unsigned workers = 1);

/// Radius ladder r0 * 2^-k, k = 0..levels-1.
std::vector<double> radius_ladder(double r0, int levels = 7);

struct SmallDensityViolation {
  std::size_t point_index = 0;
  double radius = 0.0;
  double ratio = 0.0;
  double ratio_half = 0.0;
};

/// Points where 0 < ratio(r) < eps_test while ratio(r/2) > 0, for
/// consecutive ladder radii (r, r/2); likewise for the complement. These
/// are reported, not treated as failures.
std::vector<SmallDensityViolation> small_density_violations(const BoundaryScan &scan,
                                                            double eps_test = 0.01);

} // namespace carnot
