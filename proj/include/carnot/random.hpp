#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace carnot {

/// Counter-based generator: the stream for (seed, stream, index) is a pure
/// function of those three values, so sample i is reproducible no matter
/// which worker draws it or in which order.
class CounterRng {
public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t index, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform on [0, 1).
  double uniform() { return (operator()() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal() { return normal_(*this); }

private:
  std::uint64_t state_;
  std::normal_distribution<double> normal_;
};

std::uint64_t mix64(std::uint64_t x);

/// Monte-Carlo result.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Mean and standard error of the mean from running sums.
Estimate mean_estimate(double sum, double sum_sq, std::uint64_t n, std::uint64_t seed);
/// Proportion with binomial standard error sqrt(p(1-p)/n).
Estimate binomial_estimate(std::uint64_t hits, std::uint64_t n, std::uint64_t seed);

} // namespace carnot
