#include "carnot/monotone.hpp"

#include "carnot/errors.hpp"
#include "carnot/parallel.hpp"

#include <cmath>
#include <numbers>
#include <optional>

namespace carnot {

std::string to_string(LineClass c) {
  switch (c) {
  case LineClass::empty:
    return "empty";
  case LineClass::full:
    return "full";
  case LineClass::half_line_up:
    return "half_line_up";
  case LineClass::half_line_down:
    return "half_line_down";
  case LineClass::non_monotone:
    return "non_monotone";
  }
  return "?";
}

LineRestriction restrict_range(const CarnotGroup &g, const SetOracle &e, const Line &line,
                               double t_lo, double t_hi, double h) {
  if (!(h > 0.0) || !(t_hi >= t_lo))
    throw BadGrid("restriction needs h > 0 and t_lo <= t_hi");
  const auto steps = static_cast<std::size_t>(std::ceil((t_hi - t_lo) / h - 1e-9));
  LineRestriction r{t_lo, h, std::vector<std::uint8_t>(steps + 1)};
  FlowPolynomial phi(g, line);
  Point p{Coords(g.dim())};
  for (std::size_t k = 0; k <= steps; ++k) {
    phi.evaluate(r.t_at(k), p.coords);
    r.values[k] = e.contains(p) ? 1 : 0;
  }
  return r;
}

LineRestriction restrict(const CarnotGroup &g, const SetOracle &e, const Line &line, double T, double h) {
  if (!(T > 0.0) || !(h > 0.0) || h > T / 10.0)
    throw BadGrid("restriction grid needs T > 0 and 0 < h <= T/10");
  const auto steps = static_cast<std::size_t>(std::ceil(2.0 * T / h - 1e-9));
  return restrict_range(g, e, line, -T, -T + static_cast<double>(steps) * h, h);
}

std::vector<Run> filtered_runs(std::span<const std::uint8_t> values, double h, double min_run) {
  std::vector<Run> runs;
  for (std::uint8_t v : values) {
    if (!runs.empty() && runs.back().value == v)
      ++runs.back().length;
    else
      runs.push_back({v, 1});
  }
  for (;;) {
    std::optional<std::size_t> pick;
    for (std::size_t i = 1; i + 1 < runs.size(); ++i) {
      if (static_cast<double>(runs[i].length) * h >= min_run)
        continue;
      if (!pick || runs[i].length < runs[*pick].length)
        pick = i;
    }
    if (!pick)
      break;
    const std::size_t i = *pick;
    runs[i - 1].length += runs[i].length + runs[i + 1].length;
    runs.erase(runs.begin() + static_cast<std::ptrdiff_t>(i), runs.begin() + static_cast<std::ptrdiff_t>(i) + 2);
  }
  return runs;
}

LineVerdict classify_runs(const std::vector<Run> &runs, double h) {
  LineVerdict v;
  if (runs.empty())
    return v;
  v.transitions = static_cast<int>(runs.size()) - 1;
  std::size_t shortest = runs.front().length;
  for (const auto &run : runs)
    shortest = std::min(shortest, run.length);
  v.min_feature = static_cast<double>(shortest) * h;
  if (v.transitions == 0)
    v.cls = runs.front().value ? LineClass::full : LineClass::empty;
  else if (v.transitions == 1)
    v.cls = runs.front().value ? LineClass::half_line_down : LineClass::half_line_up;
  else
    v.cls = LineClass::non_monotone;
  return v;
}

LineVerdict count_transitions(const LineRestriction &r, double min_run) {
  return classify_runs(filtered_runs(r.values, r.h, min_run), r.h);
}

int direction_bin(const Direction &x) {
  const Eigen::VectorXd v = x.horizontal();
  Eigen::Index a = 0;
  v.cwiseAbs().maxCoeff(&a);
  return 2 * static_cast<int>(a) + (v[a] < 0.0 ? 1 : 0);
}

void trace_line(const CarnotGroup &g, const Line &line, const Region &window, double h,
                LineTrace &out) {
  const Interval range = parameter_range(g, window.bounds(), line.direction);
  out.t0 = range.lo - h;
  out.h = h;
  const auto steps = static_cast<std::size_t>(std::ceil((range.hi + h - out.t0) / h));
  out.points.resize(steps + 1);
  out.inside.resize(steps + 1);
  out.meets = false;
  FlowPolynomial phi(g, line);
  Point p{Coords(g.dim())};
  for (std::size_t k = 0; k <= steps; ++k) {
    phi.evaluate(out.t0 + static_cast<double>(k) * h, p.coords);
    out.points[k] = p.coords;
    const bool in = window.contains(g, p);
    out.inside[k] = in ? 1 : 0;
    out.meets = out.meets || in;
  }
}

namespace {

struct LineOutcome {
  bool meets = false;
  LineVerdict verdict;
  int bin = 0;
};

std::vector<LineOutcome> run_lines(const CarnotGroup &g, const SetOracle &e,
                                   const LineMeasureSampler &sampler, const Region &window,
                                   std::size_t count, GridParams grid, unsigned workers) {
  if (!(grid.h > 0.0) || grid.min_run < grid.h)
    throw BadGrid("grid needs h > 0 and min_run >= h");
  const Box nx = complement_window(g, window.bounds());
  std::vector<LineOutcome> out(count);
  parallel_for(count, workers, [&](std::size_t i) {
    thread_local LineTrace trace;
    thread_local std::vector<std::uint8_t> values;
    const Line line = sampler.sample(i, nx);
    trace_line(g, line, window, grid.h, trace);
    LineOutcome &o = out[i];
    o.bin = direction_bin(line.direction);
    if (!trace.meets)
      return;
    o.meets = true;
    values.resize(trace.points.size());
    Point p{Coords(g.dim())};
    for (std::size_t k = 0; k < trace.points.size(); ++k) {
      p.coords = trace.points[k];
      values[k] = e.contains(p) ? 1 : 0;
    }
    o.verdict = classify_runs(filtered_runs(values, grid.h, grid.min_run), grid.h);
  });
  return out;
}

} // namespace

MonotonicityReport monotonicity_fraction(const CarnotGroup &g, const SetOracle &e,
                                         const LineMeasureSampler &sampler, const Region &window,
                                         std::size_t count, GridParams grid, LineRunOptions options) {
  const auto outcomes = run_lines(g, e, sampler, window, count, grid, options.workers);
  MonotonicityReport report;
  report.grid = grid;
  report.lines_sampled = count;
  report.bins.resize(2 * static_cast<std::size_t>(g.horizontal_dim()));
  const Box nx = options.keep_records ? complement_window(g, window.bounds()) : Box{};
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto &o = outcomes[i];
    if (!o.meets)
      continue;
    ++report.lines_meeting;
    const bool bad = o.verdict.cls == LineClass::non_monotone;
    report.lines_non_monotone += bad;
    ++report.bins[o.bin].lines;
    report.bins[o.bin].non_monotone += bad;
    if (options.keep_records)
      report.records.push_back({sampler.sample(i, nx), o.verdict});
  }
  report.fraction = binomial_estimate(report.lines_non_monotone, report.lines_meeting, sampler.seed());
  return report;
}

namespace {

std::vector<Coords> normal_candidates(const CarnotGroup &g, std::uint64_t seed) {
  const int r = g.horizontal_dim();
  std::vector<Coords> out;
  for (int a = 0; a < r; ++a)
    for (double s : {1.0, -1.0}) {
      Coords c = Coords::Zero(r);
      c[a] = s;
      out.push_back(c);
    }
  if (r == 2) {
    for (int k = 0; k < 72; ++k) {
      const double th = 2.0 * std::numbers::pi * k / 72.0;
      Coords c(2);
      c << std::cos(th), std::sin(th);
      out.push_back(c);
    }
  } else if (r > 2) {
    for (std::uint64_t k = 0; k < 200; ++k) {
      CounterRng rng(seed, k, 11);
      Coords c(r);
      for (int a = 0; a < r; ++a)
        c[a] = rng.normal();
      out.push_back(c / c.norm());
    }
  }
  return out;
}

} // namespace

ConstantNormalReport constant_normal_test(const CarnotGroup &g, const SetOracle &e,
                                          const LineMeasureSampler &sampler, const Region &window,
                                          std::size_t count, GridParams grid, double noise,
                                          unsigned workers) {
  if (count < 100)
    throw InvalidArgument("constant_normal_test needs at least 100 lines");
  const int r = g.horizontal_dim();
  const auto outcomes = run_lines(g, e, sampler, window, count, grid, workers);

  struct Oriented {
    Coords x;
    bool violating;
  };
  std::vector<Oriented> oriented;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto &o = outcomes[i];
    if (!o.meets || o.verdict.transitions == 0)
      continue;
    oriented.push_back({sampler.direction(i).horizontal().head(r),
                        o.verdict.cls != LineClass::half_line_up});
  }

  ConstantNormalReport report;
  report.noise_threshold = noise;
  report.lines_with_transitions = oriented.size();
  const auto candidates = normal_candidates(g, sampler.seed());
  report.candidates = candidates.size();
  report.best_normal = candidates.front();
  if (oriented.empty()) {
    report.passes = true;
    report.best_violation = 0.0;
    return report;
  }
  for (const auto &cand : candidates) {
    std::uint64_t in_half = 0, bad = 0;
    for (const auto &line : oriented) {
      if (line.x.dot(cand) < 0.0)
        continue;
      ++in_half;
      bad += line.violating;
    }
    const double frac = in_half ? static_cast<double>(bad) / static_cast<double>(in_half) : 0.0;
    if (frac < report.best_violation) {
      report.best_violation = frac;
      report.best_normal = cand;
    }
  }
  report.passes = report.best_violation <= noise;
  return report;
}

} // namespace carnot
