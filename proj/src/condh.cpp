#include "carnot/condh.hpp"

#include "carnot/errors.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <numbers>

namespace carnot {

namespace {

void check_horizontal(const CarnotGroup &g, const AlgebraVector &v) {
  const int r = g.horizontal_dim();
  if (v.coords.size() != g.dim())
    throw InvalidArgument("argument has the wrong dimension");
  for (int c = r; c < g.dim(); ++c)
    if (v.coords[c] != 0.0)
      throw NotHorizontal("Gamma argument has a component outside the first layer");
}

} // namespace

Point gamma(const CarnotGroup &g, const std::vector<AlgebraVector> &args) {
  Point out = g.identity();
  for (const auto &a : args) {
    check_horizontal(g, a);
    out = multiply(g, out, exp(a));
  }
  return out;
}

Eigen::MatrixXd gamma_jacobian(const CarnotGroup &g, const std::vector<AlgebraVector> &args,
                               double fd_step) {
  if (!(fd_step > 0.0))
    throw InvalidArgument("finite-difference step must be positive");
  const int n = g.dim();
  const int r = g.horizontal_dim();
  const int p = static_cast<int>(args.size());
  Eigen::MatrixXd jac(n, p * r);
  std::vector<AlgebraVector> work = args;
  for (int k = 0; k < p; ++k)
    for (int a = 0; a < r; ++a) {
      const double orig = work[k].coords[a];
      work[k].coords[a] = orig + fd_step;
      const Coords plus = gamma(g, work).coords;
      work[k].coords[a] = orig - fd_step;
      const Coords minus = gamma(g, work).coords;
      work[k].coords[a] = orig;
      jac.col(k * r + a) = (plus - minus) / (2.0 * fd_step);
    }
  return jac;
}

RankResult numeric_rank(const Eigen::MatrixXd &m, double rel_threshold) {
  RankResult out;
  if (m.size() == 0)
    return out;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  out.singular_values = svd.singularValues();
  const double top = out.singular_values.size() ? out.singular_values[0] : 0.0;
  if (top <= 0.0)
    return out;
  for (Eigen::Index i = 0; i < out.singular_values.size(); ++i)
    out.rank += out.singular_values[i] > rel_threshold * top;
  return out;
}

RankResult gamma_rank_at(const CarnotGroup &g, const std::vector<AlgebraVector> &args,
                         const RankOptions &options) {
  return numeric_rank(gamma_jacobian(g, args, options.fd_step), options.rel_threshold);
}

std::string to_string(GammaVerdict v) {
  return v == GammaVerdict::submersion ? "submersion" : "rank_deficient";
}

std::string GammaRankReport::openness() const {
  return verdict == GammaVerdict::submersion ? "open" : "inconclusive";
}

GammaRankReport gamma_rank(const CarnotGroup &g, const Direction &x, int p,
                           const RankOptions &options) {
  if (p < 2)
    throw InvalidArgument("gamma_rank needs p >= 2");
  const std::vector<AlgebraVector> args(static_cast<std::size_t>(p), x.vector());
  const RankResult rank = gamma_rank_at(g, args, options);
  GammaRankReport report;
  report.direction = x.vector();
  report.p = p;
  report.jacobian_rank = rank.rank;
  report.full_rank_needed = g.dim();
  report.verdict = rank.rank == g.dim() ? GammaVerdict::submersion : GammaVerdict::rank_deficient;
  report.singular_values = rank.singular_values;
  return report;
}

std::optional<int> find_min_submersion_p(const CarnotGroup &g, const Direction &x, int p_max,
                                         const RankOptions &options) {
  if (p_max < 2 || p_max > 8)
    throw InvalidArgument("find_min_submersion_p needs 2 <= p_max <= 8");
  for (int p = 2; p <= p_max; ++p)
    if (gamma_rank(g, x, p, options).verdict == GammaVerdict::submersion)
      return p;
  return std::nullopt;
}

std::vector<Direction> sphere_directions(const CarnotGroup &g, int count, std::uint64_t seed) {
  if (count < 1)
    throw InvalidArgument("sphere_directions needs count >= 1");
  const int r = g.horizontal_dim();
  std::vector<Direction> out;
  AlgebraVector v{Coords::Zero(g.dim())};
  for (int k = 0; k < count; ++k) {
    if (r == 1) {
      v.coords[0] = k % 2 == 0 ? 1.0 : -1.0;
    } else if (r == 2) {
      const double a = 2.0 * std::numbers::pi * k / count;
      v.coords[0] = std::cos(a);
      v.coords[1] = std::sin(a);
    } else if (r == 3) {
      const double z = 1.0 - (2.0 * k + 1.0) / count;
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double a = std::numbers::pi * (3.0 - std::sqrt(5.0)) * k;
      v.coords[0] = rho * std::cos(a);
      v.coords[1] = rho * std::sin(a);
      v.coords[2] = z;
    } else {
      CounterRng rng(seed, static_cast<std::uint64_t>(k), 31);
      do {
        for (int a = 0; a < r; ++a)
          v.coords[a] = rng.normal();
      } while (v.coords.head(r).norm() < 1e-6);
    }
    out.push_back(Direction::from_vector(g, v));
  }
  return out;
}

SweepReport sphere_sweep(const CarnotGroup &g, int p, int count, const RankOptions &options,
                         std::uint64_t seed) {
  SweepReport sweep;
  sweep.p = p;
  sweep.worst_rank = g.dim();
  for (const auto &x : sphere_directions(g, count, seed)) {
    sweep.reports.push_back(gamma_rank(g, x, p, options));
    const auto &rep = sweep.reports.back();
    sweep.worst_rank = std::min(sweep.worst_rank, rep.jacobian_rank);
    sweep.best_rank = std::max(sweep.best_rank, rep.jacobian_rank);
    if (rep.verdict != GammaVerdict::submersion)
      sweep.deficient.push_back(sweep.reports.size() - 1);
  }
  return sweep;
}

} // namespace carnot
