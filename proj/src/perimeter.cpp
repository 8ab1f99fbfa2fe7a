#include "carnot/perimeter.hpp"

#include "carnot/errors.hpp"
#include "carnot/parallel.hpp"

#include <cmath>
#include <sstream>

namespace carnot {

int count_in_components(const LineTrace &trace, std::span<const std::uint8_t> values, GridParams grid) {
  int total = 0;
  const std::size_t n = trace.inside.size();
  std::size_t k = 0;
  while (k < n) {
    if (!trace.inside[k]) {
      ++k;
      continue;
    }
    std::size_t end = k;
    while (end < n && trace.inside[end])
      ++end;
    const auto runs = filtered_runs(values.subspan(k, end - k), grid.h, grid.min_run);
    total += static_cast<int>(runs.size()) - 1;
    k = end;
  }
  return total;
}

namespace {

void membership(const CarnotGroup &g, const SetOracle &e, const LineTrace &trace,
                std::vector<std::uint8_t> &values) {
  values.assign(trace.points.size(), 0);
  Point p{Coords(g.dim())};
  for (std::size_t k = 0; k < trace.points.size(); ++k) {
    if (!trace.inside[k])
      continue; // only Omega n L matters
    p.coords = trace.points[k];
    values[k] = e.contains(p) ? 1 : 0;
  }
}

void check_grid(GridParams grid) {
  if (!(grid.h > 0.0) || grid.min_run < grid.h)
    throw BadGrid("grid needs h > 0 and min_run >= h");
}

} // namespace

int per_line_perimeter(const CarnotGroup &g, const SetOracle &e, const Line &line,
                       const Region &omega, GridParams grid) {
  check_grid(grid);
  LineTrace trace;
  trace_line(g, line, omega, grid.h, trace);
  if (!trace.meets)
    return 0;
  std::vector<std::uint8_t> values;
  membership(g, e, trace, values);
  return count_in_components(trace, values, grid);
}

PerimeterEstimate estimate_perimeter(const CarnotGroup &g, const SetOracle &e, const Region &omega,
                                     const LineMeasureSampler &sampler, std::size_t count,
                                     GridParams grid, unsigned workers) {
  if (count < 1000)
    throw InvalidArgument("estimate_perimeter needs at least 1000 lines");
  check_grid(grid);
  const Box nx = complement_window(g, omega.bounds());
  const double measure = sphere_area(g.horizontal_dim()) * (nx.dim() == 0 ? 1.0 : nx.volume());
  if (!(measure > 0.0))
    throw EmptyWindow("line window has zero measure");

  std::vector<int> counts(count, 0);
  std::vector<std::uint8_t> meets(count, 0);
  parallel_for(count, workers, [&](std::size_t i) {
    thread_local LineTrace trace;
    thread_local std::vector<std::uint8_t> values;
    const Line line = sampler.sample(i, nx);
    trace_line(g, line, omega, grid.h, trace);
    if (!trace.meets)
      return;
    meets[i] = 1;
    membership(g, e, trace, values);
    counts[i] = count_in_components(trace, values, grid);
  });

  PerimeterEstimate est;
  est.lines_used = count;
  est.line_measure = measure;
  est.window = omega.bounds();
  est.grid = grid;
  est.seed = sampler.seed();
  double sum = 0.0, sum_sq = 0.0;
  std::uint64_t at_most_one = 0;
  for (std::size_t i = 0; i < count; ++i) {
    sum += counts[i];
    sum_sq += static_cast<double>(counts[i]) * counts[i];
    est.max_line_count = std::max<std::uint64_t>(est.max_line_count, counts[i]);
    if (meets[i]) {
      ++est.lines_meeting;
      at_most_one += counts[i] <= 1;
    }
  }
  const Estimate mean = mean_estimate(sum, sum_sq, count, sampler.seed());
  est.value = measure * mean.value;
  est.std_error = measure * mean.std_error;
  est.fraction_at_most_one =
      est.lines_meeting ? static_cast<double>(at_most_one) / static_cast<double>(est.lines_meeting) : 1.0;
  return est;
}

MinimalityReport minimality_test(const CarnotGroup &g, const SetOracle &e, const Region &omega,
                                 const std::vector<SetOracle> &perturbations,
                                 const LineMeasureSampler &sampler, std::size_t count,
                                 GridParams grid, unsigned workers) {
  check_grid(grid);
  if (!omega.is_plain_box())
    throw InvalidArgument("minimality_test needs a plain coordinate box window");
  const Box &box = omega.base_box();
  const double margin = 2.0 * grid.h;
  for (const auto &p : perturbations) {
    if (!p.bounds())
      throw PerturbationTouchesBoundary("perturbation '" + p.description() + "' is unbounded");
    const Box &b = *p.bounds();
    for (int c = 0; c < box.dim(); ++c)
      if (b.lo[c] < box.lo[c] + margin || b.hi[c] > box.hi[c] - margin)
        throw PerturbationTouchesBoundary("perturbation '" + p.description() +
                                          "' is not compactly inside the window");
  }

  MinimalityReport report;
  report.base = estimate_perimeter(g, e, omega, sampler, count, grid, workers);

  const Box nx = complement_window(g, omega.bounds());
  const std::size_t m = perturbations.size();
  std::vector<int> diffs(count * m, 0);
  parallel_for(count, workers, [&](std::size_t i) {
    thread_local LineTrace trace;
    thread_local std::vector<std::uint8_t> base_values, values;
    const Line line = sampler.sample(i, nx);
    trace_line(g, line, omega, grid.h, trace);
    if (!trace.meets)
      return;
    membership(g, e, trace, base_values);
    const int base_count = count_in_components(trace, base_values, grid);
    Point p{Coords(g.dim())};
    for (std::size_t b = 0; b < m; ++b) {
      const SetOracle &ball = perturbations[b];
      const Box &bb = *ball.bounds();
      bool touched = false;
      values = base_values;
      for (std::size_t k = 0; k < trace.points.size(); ++k) {
        if (!trace.inside[k] || !bb.contains(trace.points[k]))
          continue;
        p.coords = trace.points[k];
        if (ball.contains(p)) {
          values[k] ^= 1;
          touched = true;
        }
      }
      if (touched)
        diffs[i * m + b] = count_in_components(trace, values, grid) - base_count;
    }
  });

  for (std::size_t b = 0; b < m; ++b) {
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const double d = diffs[i * m + b];
      sum += d;
      sum_sq += d * d;
    }
    const Estimate mean = mean_estimate(sum, sum_sq, count, sampler.seed());
    PerturbationResult r;
    r.description = perturbations[b].description();
    r.bounds = *perturbations[b].bounds();
    r.delta = report.base.line_measure * mean.value;
    r.std_error = report.base.line_measure * mean.std_error;
    r.pass = r.delta >= -3.0 * r.std_error;
    report.pass = report.pass && r.pass;
    report.perturbations.push_back(std::move(r));
  }
  return report;
}

HomogeneityReport homogeneity_test(const CarnotGroup &g, const SetOracle &e, const Region &omega,
                                   double lambda, std::uint64_t seed, std::size_t count,
                                   GridParams grid, unsigned workers) {
  if (!(lambda > 0.0))
    throw NonPositiveLambda(lambda);
  HomogeneityReport report;
  report.lambda = lambda;
  report.base = estimate_perimeter(g, e, omega, LineMeasureSampler(g, seed), count, grid, workers);
  report.scaled = estimate_perimeter(g, dilate(g, e, lambda), omega.dilated(g, lambda),
                                     LineMeasureSampler(g, seed + 1), count, grid.scaled(lambda),
                                     workers);
  report.expected = std::pow(lambda, g.homogeneous_dim() - 1);
  if (report.base.value > 0.0) {
    report.ratio = report.scaled.value / report.base.value;
    const double ra = report.scaled.std_error / report.scaled.value;
    const double rb = report.base.std_error / report.base.value;
    report.ratio_std_error = report.ratio * std::sqrt(ra * ra + rb * rb);
    report.pass = std::abs(report.ratio - report.expected) <= 3.0 * report.ratio_std_error;
  }
  return report;
}

} // namespace carnot
