#pragma once

#include "carnot/lines.hpp"
#include "carnot/monotone.hpp"
#include "carnot/random.hpp"
#include "carnot/region.hpp"
#include "carnot/sets.hpp"

#include <cstdint>
#include <vector>

namespace carnot {

/// Monte-Carlo value of the line integral  int Per_L(E n L, Omega n L) dN(L)
/// (the perimeter up to the unknown normalizing constant of the kinematic
/// formula). value = line_measure * mean(per-line count).
struct PerimeterEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t lines_used = 0;
  std::uint64_t lines_meeting = 0;
  double line_measure = 0.0; // sphere area * N_X window volume
  Box window;                // bounds of Omega
  GridParams grid;
  std::uint64_t seed = 0;
  std::uint64_t max_line_count = 0;
  /// Fraction of lines meeting Omega whose count is <= 1.
  double fraction_at_most_one = 1.0;
};

/// Per_L(E n L, Omega n L) on the grid: transitions of the filtered trace,
/// counted separately on each connected parameter component of Omega n L.
int per_line_perimeter(const CarnotGroup &g, const SetOracle &e, const Line &line,
                       const Region &omega, GridParams grid);

/// Same count from an existing trace and membership values.
int count_in_components(const LineTrace &trace, std::span<const std::uint8_t> values, GridParams grid);

/// Throws InvalidArgument if count < 1000.
PerimeterEstimate estimate_perimeter(const CarnotGroup &g, const SetOracle &e, const Region &omega,
                                     const LineMeasureSampler &sampler, std::size_t count,
                                     GridParams grid, unsigned workers = 1);

struct PerturbationResult {
  std::string description;
  Box bounds;
  double delta = 0.0; // estimate(F) - estimate(E), common random numbers
  double std_error = 0.0;
  bool pass = true;   // delta >= -3 stderr
};

struct MinimalityReport {
  PerimeterEstimate base;
  std::vector<PerturbationResult> perturbations;
  bool pass = true;
};

/// For each bounded perturbation B (strictly inside Omega with margin
/// 2h), compares F = E symdiff B against E on the same lines.
/// Throws PerturbationTouchesBoundary when a perturbation leaves Omega
/// shrunk by the margin.
MinimalityReport minimality_test(const CarnotGroup &g, const SetOracle &e, const Region &omega,
                                 const std::vector<SetOracle> &perturbations,
                                 const LineMeasureSampler &sampler, std::size_t count,
                                 GridParams grid, unsigned workers = 1);

struct HomogeneityReport {
  double lambda = 1.0;
  PerimeterEstimate base;
  PerimeterEstimate scaled;
  double ratio = 0.0;
  double ratio_std_error = 0.0;
  double expected = 0.0; // lambda^(Q-1)
  bool pass = false;     // |ratio - expected| <= 3 stderr
};

/// estimate(delta_lambda E, delta_lambda Omega) / estimate(E, Omega) with
/// independent line streams (seed, seed + 1) and the grid scaled by lambda.
HomogeneityReport homogeneity_test(const CarnotGroup &g, const SetOracle &e, const Region &omega,
                                   double lambda, std::uint64_t seed, std::size_t count,
                                   GridParams grid, unsigned workers = 1);

} // namespace carnot
