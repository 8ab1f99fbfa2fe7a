#include "carnot/gauge.hpp"

#include "carnot/errors.hpp"
#include "carnot/random.hpp"
#include "carnot/region.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace carnot {

HomogeneousDistance::HomogeneousDistance(const CarnotGroup &g, std::vector<double> kappa)
    : g_(&g), kappa_(std::move(kappa)) {
  if (static_cast<int>(kappa_.size()) != g.step())
    throw InvalidArgument("gauge needs one calibration constant per layer");
  for (double k : kappa_)
    if (!(k > 0.0))
      throw InvalidArgument("gauge calibration constants must be positive");
}

double HomogeneousDistance::norm(const Point &p) const {
  const auto &strat = g_->strat();
  double out = 0.0;
  for (int i = 1; i <= strat.step(); ++i) {
    const double block = p.coords.segment(strat.layer_begin(i), strat.layer_size(i)).norm();
    const double term = i == 1 ? kappa_[0] * block : std::pow(kappa_[i - 1] * block, 1.0 / i);
    out = std::max(out, term);
  }
  return out;
}

double HomogeneousDistance::operator()(const Point &x, const Point &y) const {
  return norm(multiply(*g_, inverse(x), y));
}

bool HomogeneousDistance::in_ball(const Point &p, double radius) const {
  const auto &strat = g_->strat();
  double power = 1.0;
  for (int i = 1; i <= strat.step(); ++i) {
    power *= radius;
    const double block = p.coords.segment(strat.layer_begin(i), strat.layer_size(i)).norm();
    if (!(kappa_[i - 1] * block < power))
      return false;
  }
  return true;
}

Box HomogeneousDistance::ball_bounds(double radius) const {
  const auto &strat = g_->strat();
  Box box{Coords(g_->dim()), Coords(g_->dim())};
  for (int c = 0; c < g_->dim(); ++c) {
    const int i = strat.layer_of(c);
    const double half = std::pow(radius, i) / kappa_[i - 1];
    box.lo[c] = -half;
    box.hi[c] = half;
  }
  return box;
}

Box HomogeneousDistance::ball_bounds(const Point &center, double radius) const {
  return product_bounds(*g_, Box{center.coords, center.coords}, ball_bounds(radius));
}

namespace {

Point random_point(const CarnotGroup &g, CounterRng &rng) {
  Point p{Coords(g.dim())};
  const auto &strat = g.strat();
  for (int i = 1; i <= strat.step(); ++i) {
    const double scale = std::pow(10.0, rng.uniform(-2.0, 1.0));
    for (int c = 0; c < strat.layer_size(i); ++c)
      p.coords[strat.layer_begin(i) + c] = scale * rng.normal();
  }
  return p;
}

double ratio(const HomogeneousDistance &d, const Point &p, const Point &q) {
  const double denom = d.norm(p) + d.norm(q);
  if (denom <= 0.0)
    return 0.0;
  return d.norm(multiply(d.group(), p, q)) / denom;
}

} // namespace

double max_triangle_ratio(const HomogeneousDistance &d, std::uint64_t seed, int pairs) {
  const CarnotGroup &g = d.group();
  struct Candidate {
    Point p, q;
    double value;
  };
  std::vector<Candidate> all;
  all.reserve(pairs);
  for (int i = 0; i < pairs; ++i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i), 7);
    Point p = random_point(g, rng);
    Point q = random_point(g, rng);
    const double v = ratio(d, p, q);
    all.push_back({std::move(p), std::move(q), v});
  }
  const std::size_t keep = std::min<std::size_t>(32, all.size());
  std::partial_sort(all.begin(), all.begin() + keep, all.end(),
                    [](const Candidate &a, const Candidate &b) { return a.value > b.value; });
  double worst = keep > 0 ? all.front().value : 0.0;

  // Local ascent from the worst candidates.
  for (std::size_t c = 0; c < keep; ++c) {
    Candidate cur = all[c];
    CounterRng rng(seed, c, 8);
    double step = 0.1;
    for (int it = 0; it < 300; ++it) {
      Candidate trial = cur;
      const double np = d.norm(cur.p), nq = d.norm(cur.q);
      for (int k = 0; k < g.dim(); ++k) {
        trial.p.coords[k] += step * std::max(np, 1e-3) * rng.normal();
        trial.q.coords[k] += step * std::max(nq, 1e-3) * rng.normal();
      }
      trial.value = ratio(d, trial.p, trial.q);
      if (trial.value > cur.value)
        cur = std::move(trial);
      else if (it % 50 == 49)
        step *= 0.5;
    }
    worst = std::max(worst, cur.value);
  }
  return worst;
}

HomogeneousDistance HomogeneousDistance::calibrate(const CarnotGroup &g, std::uint64_t seed,
                                                   int pairs) {
  std::vector<double> kappa(g.step(), 1.0);
  if (g.step() == 1) {
    HomogeneousDistance d(g, kappa);
    d.triangle_ratio_ = max_triangle_ratio(d, seed, std::min(pairs, 2000));
    return d;
  }
  double c = 1.0;
  for (int attempt = 0; attempt < 40; ++attempt) {
    std::fill(kappa.begin() + 1, kappa.end(), c);
    HomogeneousDistance trial(g, kappa);
    if (max_triangle_ratio(trial, seed, pairs) <= 1.0)
      break;
    c *= 0.5;
  }
  std::fill(kappa.begin() + 1, kappa.end(), c / 1.05);
  HomogeneousDistance d(g, kappa);
  d.triangle_ratio_ = max_triangle_ratio(d, seed + 1, pairs);
  return d;
}

} // namespace carnot
