#pragma once

#include "carnot/group.hpp"
#include "carnot/lines.hpp"

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

namespace carnot {

/// Gamma_p(X_1, ..., X_p) = exp X_1 ... exp X_p. Throws NotHorizontal if an
/// argument leaves the first layer.
Point gamma(const CarnotGroup &g, const std::vector<AlgebraVector> &args);

struct RankOptions {
  double fd_step = 1e-5;        // central differences
  double rel_threshold = 1e-7;  // relative to the largest singular value
};

/// n x (p r) Jacobian of Gamma_p with respect to the first-layer
/// coordinates of each argument.
Eigen::MatrixXd gamma_jacobian(const CarnotGroup &g, const std::vector<AlgebraVector> &args,
                               double fd_step = 1e-5);

struct RankResult {
  int rank = 0;
  Eigen::VectorXd singular_values;
};

RankResult numeric_rank(const Eigen::MatrixXd &m, double rel_threshold);
RankResult gamma_rank_at(const CarnotGroup &g, const std::vector<AlgebraVector> &args,
                         const RankOptions &options = {});

enum class GammaVerdict { submersion, rank_deficient };
std::string to_string(GammaVerdict v);

struct GammaRankReport {
  AlgebraVector direction;
  int p = 0;
  int jacobian_rank = 0;
  int full_rank_needed = 0;
  GammaVerdict verdict = GammaVerdict::rank_deficient;
  Eigen::VectorXd singular_values;
  /// "open" for a submersion; "inconclusive" otherwise, since a rank
  /// deficient differential does not decide openness.
  std::string openness() const;
};

/// Rank of d Gamma_p at (X, ..., X). Throws InvalidArgument if p < 2.
GammaRankReport gamma_rank(const CarnotGroup &g, const Direction &x, int p,
                           const RankOptions &options = {});

/// Smallest p in [2, p_max] with a full rank differential at the diagonal.
/// Throws InvalidArgument unless 2 <= p_max <= 8.
std::optional<int> find_min_submersion_p(const CarnotGroup &g, const Direction &x, int p_max,
                                         const RankOptions &options = {});

/// Quasi-uniform unit directions of the first layer: equal angles for
/// r = 2, a Fibonacci lattice for r = 3, seeded Gaussian points otherwise.
std::vector<Direction> sphere_directions(const CarnotGroup &g, int count, std::uint64_t seed = 0);

struct SweepReport {
  int p = 0;
  std::vector<GammaRankReport> reports;
  int worst_rank = 0;
  int best_rank = 0;
  std::vector<std::size_t> deficient; // indices into reports
  bool all_submersion() const { return deficient.empty(); }
  bool all_deficient() const { return deficient.size() == reports.size(); }
};

SweepReport sphere_sweep(const CarnotGroup &g, int p, int count, const RankOptions &options = {},
                         std::uint64_t seed = 0);

} // namespace carnot
