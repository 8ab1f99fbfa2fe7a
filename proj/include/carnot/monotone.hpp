#pragma once

#include "carnot/lines.hpp"
#include "carnot/random.hpp"
#include "carnot/region.hpp"
#include "carnot/sets.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace carnot {

/// Samples of 1_E(Phi_X(n, t_k)) on t_k = t0 + k h.
struct LineRestriction {
  double t0 = 0.0;
  double h = 0.0;
  std::vector<std::uint8_t> values;

  double t_at(std::size_t k) const { return t0 + static_cast<double>(k) * h; }
};

enum class LineClass { empty, full, half_line_up, half_line_down, non_monotone };

std::string to_string(LineClass c);

struct LineVerdict {
  int transitions = 0;
  LineClass cls = LineClass::empty;
  /// Shortest surviving run, in parameter units.
  double min_feature = 0.0;
};

/// Grid resolution shared by the line-based estimators.
struct GridParams {
  double h = 0.01;
  double min_run = 0.04; // 4h by default
  static GridParams with_step(double h) { return {h, 4.0 * h}; }
  GridParams scaled(double lambda) const { return {h * lambda, min_run * lambda}; }
};

/// Samples E along L on [-T, T] with step h: ceil(2T/h) + 1 values.
/// Throws BadGrid unless T > 0 and 0 < h <= T/10.
LineRestriction restrict(const CarnotGroup &g, const SetOracle &e, const Line &line, double T, double h);

/// Same on [t_lo, t_hi] (no resolution precondition).
LineRestriction restrict_range(const CarnotGroup &g, const SetOracle &e, const Line &line,
                               double t_lo, double t_hi, double h);

/// Maximal constant runs after filtering: interior runs shorter than
/// `min_run` are absorbed into their neighbours, shortest first and
/// leftmost on ties. Runs touching either end of the sample window are
/// never absorbed. Run lengths are (sample count) * h.
struct Run {
  std::uint8_t value;
  std::size_t length;
};
std::vector<Run> filtered_runs(std::span<const std::uint8_t> values, double h, double min_run);

/// Essential transitions of the filtered trace and the resulting class.
LineVerdict count_transitions(const LineRestriction &r, double min_run);
LineVerdict classify_runs(const std::vector<Run> &runs, double h);

struct LineRecord {
  Line line;
  LineVerdict verdict;
};

struct MonotonicityReport {
  std::uint64_t lines_sampled = 0;
  std::uint64_t lines_meeting = 0; // lines with a grid point inside the window
  std::uint64_t lines_non_monotone = 0;
  Estimate fraction;               // non-monotone / meeting, binomial stderr

  /// Directions binned by dominant axis: bin 2a (+e_a) and 2a+1 (-e_a).
  struct Bin {
    std::uint64_t lines = 0;
    std::uint64_t non_monotone = 0;
  };
  std::vector<Bin> bins;
  std::vector<LineRecord> records; // lines meeting the window, in sample order
  GridParams grid;
};

struct LineRunOptions {
  unsigned workers = 1;
  bool keep_records = false;
};

/// Monte-Carlo estimate of the line-measure fraction of non-monotone lines
/// among lines meeting `window`. Line i is sample i of `sampler` drawn from
/// the N_X cover of the window; its trace is taken over the flow parameters
/// that can reach the window, padded by one grid step.
MonotonicityReport monotonicity_fraction(const CarnotGroup &g, const SetOracle &e,
                                         const LineMeasureSampler &sampler, const Region &window,
                                         std::size_t count, GridParams grid,
                                         LineRunOptions options = {});

struct ConstantNormalReport {
  bool passes = false;
  Coords best_normal;            // horizontal candidate X_1 with the fewest violations
  double best_violation = 1.0;   // violating / oriented lines in {<X_1, X> >= 0}
  std::uint64_t lines_with_transitions = 0;
  std::uint64_t candidates = 0;
  double noise_threshold = 0.0;
};

/// Looks for X_1 such that every line with direction in {<X_1, X> >= 0}
/// sees E as nondecreasing (empty, full or half_line_up). Violations are
/// half_line_down and non_monotone verdicts in that half-space; E passes
/// when some candidate keeps their fraction <= noise. Candidates: +-e_a
/// plus a sphere grid (72 angles for r = 2, 200 seeded points otherwise).
ConstantNormalReport constant_normal_test(const CarnotGroup &g, const SetOracle &e,
                                          const LineMeasureSampler &sampler, const Region &window,
                                          std::size_t count, GridParams grid, double noise = 0.02,
                                          unsigned workers = 1);

/// Dominant-axis bin of a direction.
int direction_bin(const Direction &x);

/// Grid trace of one line over a window: parameters, points, and
/// membership in the window. Shared by the monotone and perimeter code.
struct LineTrace {
  double t0 = 0.0;
  double h = 0.0;
  std::vector<Coords> points;
  std::vector<std::uint8_t> inside;
  bool meets = false;
};
void trace_line(const CarnotGroup &g, const Line &line, const Region &window, double h,
                LineTrace &out);

} // namespace carnot
