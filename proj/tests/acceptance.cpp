// Acceptance checks 1-11. `acceptance k` runs check k, `acceptance` runs
// all of them. One line per check: "criterion k: PASS|FAIL  details".

#include "carnot/condh.hpp"
#include "carnot/density.hpp"
#include "carnot/errors.hpp"
#include "carnot/monotone.hpp"
#include "carnot/perimeter.hpp"
#include "carnot/presets.hpp"
#include "support/oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>

using namespace carnot;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Timer {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

AlgebraVector vec3(double a, double b, double c) { return AlgebraVector{(Coords(3) << a, b, c).finished()}; }

Direction random_direction(const CarnotGroup &g, CounterRng &rng) {
  AlgebraVector v{Coords::Zero(g.dim())};
  for (int a = 0; a < g.horizontal_dim(); ++a)
    v.coords[a] = rng.normal();
  return Direction::from_vector(g, v);
}

const std::vector<std::string> kPresets = {"R2", "H1", "H2", "free_2_3", "engel"};

Outcome algebraic_suite() {
  Timer timer;
  Outcome out;
  std::ostringstream os;
  double worst_jacobi = 0.0, worst_assoc = 0.0;
  int inverse_failures = 0;
  for (const auto &name : kPresets) {
    const CarnotGroup g = preset(name);
    worst_jacobi = std::max(worst_jacobi, max_jacobi_residual(g));
    CounterRng rng(1001, 0);
    for (int i = 0; i < 1000; ++i) {
      const Point a = oracle::random_point(g, rng, 2.0), b = oracle::random_point(g, rng, 2.0),
                  c = oracle::random_point(g, rng, 2.0);
      const Point l = multiply(g, multiply(g, a, b), c), r = multiply(g, a, multiply(g, b, c));
      worst_assoc = std::max(worst_assoc, (l.coords - r.coords).cwiseAbs().maxCoeff());
      const Point e1 = multiply(g, a, inverse(a)), e2 = multiply(g, inverse(a), a);
      inverse_failures += !(e1.coords.isZero(0.0) && e2.coords.isZero(0.0));
    }
  }
  const double t = timer.seconds();
  out.pass = worst_jacobi <= 1e-12 && worst_assoc <= 1e-10 && inverse_failures == 0 && t < 10.0;
  os << "max Jacobi residual " << worst_jacobi << ", max associativity error " << worst_assoc
     << " over 1000 triples x 5 presets, inverse-law failures " << inverse_failures << ", " << t << " s";
  out.detail = os.str();
  return out;
}

Outcome flow_suite() {
  Timer timer;
  Outcome out;
  double worst_det = 0.0, worst_round_trip = 0.0;
  for (const auto &name : kPresets) {
    const CarnotGroup g = preset(name);
    CounterRng rng(2002, 0);
    for (int i = 0; i < 1000; ++i) {
      const Direction x = random_direction(g, rng);
      Coords u(g.dim() - 1);
      for (int c = 0; c < u.size(); ++c)
        u[c] = rng.uniform(-1.5, 1.5);
      const double det = oracle::flow_jacobian_det(g, x, u, rng.uniform(-1.5, 1.5));
      worst_det = std::max(worst_det, std::abs(std::abs(det) - 1.0));
      const Point y = oracle::random_point(g, rng, 1.5);
      const Decomposition d = decompose(g, x, y);
      worst_round_trip = std::max(worst_round_trip, (flow(g, x, d.base, d.t).coords - y.coords).cwiseAbs().maxCoeff());
    }
  }
  const double t = timer.seconds();
  out.pass = worst_det <= 1e-8 && worst_round_trip <= 1e-12 && t < 30.0;
  std::ostringstream os;
  os << "max ||det| - 1| " << worst_det << ", max decompose round-trip error " << worst_round_trip
     << " over 1000 points x 5 presets, " << t << " s";
  out.detail = os.str();
  return out;
}

Outcome volume_law() {
  Timer timer;
  const CarnotGroup g = preset("H1");
  const auto d = HomogeneousDistance::calibrate(g);
  const auto rep = ball_volume_law(d, {0.25, 0.5, 1.0, 2.0, 4.0}, 1000000, 3003);
  const double t = timer.seconds();
  Outcome out;
  out.pass = std::abs(rep.slope - 4.0) <= 0.1 && t < 60.0;
  std::ostringstream os;
  os << "H1 log-log slope " << rep.slope << " (target 4 +- 0.1), 10^6 samples x 5 radii, " << t << " s";
  out.detail = os.str();
  return out;
}

Outcome oracle_agreement() {
  const CarnotGroup g = preset("R2");
  const Region window(centered_box(2, 1.0));
  const GridParams grid = GridParams::with_step(0.01);
  struct Case {
    std::string name;
    SetOracle set;
    std::function<oracle::ExactTrace(const Eigen::Vector2d &, const Eigen::Vector2d &)> exact;
  };
  const Eigen::Vector2d n1(0.6, 0.8), n2(-1.0, 0.0), c1(0.1, -0.2), c2(-0.3, 0.4);
  std::vector<Case> cases = {
      {"half-plane (0.6,0.8)>0.1", half_space(g, AlgebraVector{n1}, 0.1),
       [&](auto &b, auto &x) { return oracle::half_plane_trace(b, x, n1, 0.1); }},
      {"half-plane (-1,0)>-0.3", half_space(g, AlgebraVector{n2}, -0.3),
       [&](auto &b, auto &x) { return oracle::half_plane_trace(b, x, n2, -0.3); }},
      {"disk r=0.5", coordinate_ball(g, Point{c1}, 0.5),
       [&](auto &b, auto &x) { return oracle::disk_trace(b, x, c1, 0.5); }},
      {"disk r=0.2", coordinate_ball(g, Point{c2}, 0.2),
       [&](auto &b, auto &x) { return oracle::disk_trace(b, x, c2, 0.2); }},
  };
  Outcome out;
  std::ostringstream os;
  int total_lines = 0, total_disagree = 0, total_ambiguous = 0;
  std::uint64_t seed = 4004;
  for (const auto &cs : cases) {
    const LineMeasureSampler sampler(g, seed++);
    // Oversample so that at least 1000 lines meet the window.
    auto rep = monotonicity_fraction(g, cs.set, sampler, window, 1300, grid, {1, true});
    if (rep.records.size() < 1000)
      throw std::runtime_error("too few lines meet the window");
    rep.records.erase(rep.records.begin() + 1000, rep.records.end());
    int disagree = 0, ambiguous = 0;
    LineTrace trace;
    for (const auto &rec : rep.records) {
      trace_line(g, rec.line, window, grid.h, trace);
      const double t_lo = trace.t0;
      const double t_hi = trace.t0 + grid.h * static_cast<double>(trace.points.size() - 1);
      const Eigen::Vector2d base = rec.line.base.coords.head(2);
      const Eigen::Vector2d x = rec.line.direction.horizontal();
      const oracle::ExactTrace tr = cs.exact(base, x);
      // The grid cannot decide features within one step of the resolution
      // limit: crossings within h of the trace ends, or a chord within h
      // of min_run.
      bool undecidable = false;
      for (const auto &e : {tr.enter, tr.leave})
        if (e && (std::abs(*e - t_lo) <= grid.h || std::abs(*e - t_hi) <= grid.h))
          undecidable = true;
      const int crossings = oracle::exact_transitions(tr, t_lo, t_hi);
      if (crossings == 2 && std::abs((*tr.leave - *tr.enter) - grid.min_run) <= grid.h)
        undecidable = true;
      if (undecidable) {
        ++ambiguous;
        continue;
      }
      const bool exact_non_monotone = crossings == 2 && (*tr.leave - *tr.enter) > grid.min_run;
      disagree += exact_non_monotone != (rec.verdict.cls == LineClass::non_monotone);
    }
    total_lines += static_cast<int>(rep.records.size());
    total_disagree += disagree;
    total_ambiguous += ambiguous;
    os << cs.name << ": " << disagree << "/" << rep.records.size() << "; ";
  }
  out.pass = total_disagree == 0;
  os << "total disagreements " << total_disagree << " on " << total_lines << " lines (" << total_ambiguous
     << " lines within one grid step of the resolution limit skipped), min_run = 4h";
  out.detail = os.str();
  return out;
}

std::vector<SetOracle> random_balls(const HomogeneousDistance &d, int count, double spread, double r_lo,
                                    double r_hi, std::uint64_t seed) {
  const CarnotGroup &g = d.group();
  CounterRng rng(seed, 0, 5);
  std::vector<SetOracle> out;
  while (static_cast<int>(out.size()) < count) {
    Point c{Coords(g.dim())};
    for (int k = 0; k < g.dim(); ++k)
      c.coords[k] = rng.uniform(-spread, spread);
    out.push_back(metric_ball(d, c, rng.uniform(r_lo, r_hi)));
  }
  return out;
}

Outcome minimizers_pass() {
  Timer timer;
  const CarnotGroup g = preset("H1");
  const auto d = HomogeneousDistance::calibrate(g);
  const Region omega(centered_box(3, 1.0));
  const GridParams grid = GridParams::with_step(0.01);
  const auto balls = random_balls(d, 20, 0.4, 0.1, 0.3, 5005);
  Outcome out;
  std::ostringstream os;
  struct Named {
    std::string name;
    SetOracle set;
  };
  for (const auto &[name, e] : {Named{"vertical half-space", half_space(g, vec3(1, 0, 0), 0.0)},
                                Named{"E_Z", half_space(g, vec3(0, 0, 1), 0.0)}}) {
    const auto rep = minimality_test(g, e, omega, balls, LineMeasureSampler(g, 5006), 100000, grid);
    double worst = 1e300;
    for (const auto &p : rep.perturbations)
      worst = std::min(worst, p.delta / p.std_error);
    out.pass = out.pass && rep.pass;
    os << name << " " << (rep.pass ? "PASS" : "FAIL") << " (min delta/stderr " << worst << "); ";
  }
  const double t = timer.seconds();
  out.pass = out.pass && t < 300.0;
  os << "20 balls, 10^5 common lines, " << t << " s";
  out.detail = os.str();
  return out;
}

Outcome non_minimizer_detected() {
  Timer timer;
  const CarnotGroup g = preset("H1");
  const auto d = HomogeneousDistance::calibrate(g);
  const Region omega(centered_box(3, 1.0));
  const GridParams grid = GridParams::with_step(0.01);
  const SetOracle e = metric_ball(d, g.identity(), 0.5);
  // Competitors: E symdiff B for random balls B, plus B = E (F empty in Omega).
  auto perturbations = random_balls(d, 20, 0.3, 0.05, 0.2, 6006);
  perturbations.push_back(e);
  const auto rep = minimality_test(g, e, omega, perturbations, LineMeasureSampler(g, 6007), 100000, grid);
  int detected = 0;
  for (const auto &p : rep.perturbations)
    detected += p.delta < -3.0 * p.std_error;
  const auto &removal = rep.perturbations.back();
  const double t = timer.seconds();
  Outcome out;
  out.pass = detected >= 1 && t < 300.0;
  std::ostringstream os;
  os << detected << " of " << rep.perturbations.size() << " competitors with delta < -3 stderr; F = empty: delta "
     << removal.delta << " +- " << removal.std_error << " (estimate(E) " << rep.base.value << "), " << t << " s";
  out.detail = os.str();
  return out;
}

Outcome perimeter_homogeneity() {
  Timer timer;
  const CarnotGroup g = preset("H1");
  const Region omega(centered_box(3, 1.0));
  const auto rep = homogeneity_test(g, half_space(g, vec3(1, 0, 0), 0.0), omega, 2.0, 7007, 100000,
                                    GridParams::with_step(0.01));
  Outcome out;
  out.pass = rep.pass;
  std::ostringstream os;
  os << "ratio " << rep.ratio << " +- " << rep.ratio_std_error << " vs 2^(Q-1) = " << rep.expected
     << ", |diff|/stderr " << std::abs(rep.ratio - rep.expected) / rep.ratio_std_error << ", " << timer.seconds()
     << " s";
  out.detail = os.str();
  return out;
}

Outcome density_picture() {
  Timer timer;
  const CarnotGroup g = preset("H1");
  const auto d = HomogeneousDistance::calibrate(g);
  const SetOracle e = half_space(g, vec3(1, 0, 0), 0.0);
  const double step = 0.1, eps = 0.05;
  const auto radii = radius_ladder(12.8, 7); // 12.8 ... 0.2
  const auto scan = boundary_scan(e, centered_box(3, 0.5), step, eps, radii, radii.back(), 2000, d, 8008);
  int near = 0, near_boundary = 0, far_boundary = 0;
  for (const auto &p : scan.points) {
    const bool is_near = std::abs(p.profile.point.coords[0]) <= step + 1e-9;
    near += is_near;
    near_boundary += is_near && p.cls == PointClass::boundary;
    far_boundary += !is_near && p.cls == PointClass::boundary;
  }
  const double frac = static_cast<double>(near_boundary) / near;
  const auto profile = density_profile(e, g.identity(), radii, 20000, d, 8009);
  double worst_sigma = 0.0;
  for (const auto &r : profile.ratios)
    worst_sigma = std::max(worst_sigma, std::abs(r.value - 0.5) / r.std_error);
  Outcome out;
  out.pass = frac >= 0.95 && worst_sigma <= 3.0;
  std::ostringstream os;
  os << near_boundary << "/" << near << " grid points within one step of {x_1 = 0} classified boundary (" << frac
     << "), " << far_boundary << " boundary points farther out; identity profile worst |ratio - 1/2|/sigma "
     << worst_sigma << " over " << radii.size() << " radii, " << timer.seconds() << " s";
  out.detail = os.str();
  return out;
}

Outcome condition_h() {
  Outcome out;
  std::ostringstream os;
  const CarnotGroup h1 = preset("H1");
  const auto sweep_h1 = sphere_sweep(h1, 2, 100);
  const int h1_sub = static_cast<int>(sweep_h1.reports.size() - sweep_h1.deficient.size());
  const CarnotGroup f = preset("free_2_3");
  const auto sweep_f = sphere_sweep(f, 2, 100);
  int found = 0, best_rank = 0;
  const auto dirs = sphere_directions(f, 20);
  for (const auto &x : dirs) {
    found += find_min_submersion_p(f, x, 8).has_value();
    for (int p = 2; p <= 8; ++p)
      best_rank = std::max(best_rank, gamma_rank(f, x, p).jacobian_rank);
  }
  int covariance_failures = 0, covariance_checks = 0;
  for (const auto &name : kPresets) {
    const CarnotGroup g = preset(name);
    for (const auto &x : sphere_directions(g, 10))
      for (int p : {2, 3, 4}) {
        const int base = gamma_rank(g, x, p).jacobian_rank;
        for (double lambda : {0.5, 2.0}) {
          const std::vector<AlgebraVector> args(p, AlgebraVector{lambda * x.vector().coords});
          covariance_failures += gamma_rank_at(g, args).rank != base;
          ++covariance_checks;
        }
      }
  }
  const bool h1_ok = h1_sub == 100;
  const bool f_deficient = sweep_f.all_deficient();
  const bool f_found = found == static_cast<int>(dirs.size());
  out.pass = h1_ok && f_deficient && f_found && covariance_failures == 0;
  os << "H1 p=2 submersion " << h1_sub << "/100; free_2_3 p=2 rank-deficient "
     << sweep_f.deficient.size() << "/100; free_2_3 find_min_submersion_p <= 8 found for " << found << "/"
     << dirs.size() << " directions (max rank over p=2..8 is " << best_rank << " < 6, openness inconclusive)"
     << "; dilation covariance " << covariance_checks - covariance_failures << "/" << covariance_checks;
  out.detail = os.str();
  return out;
}

Outcome invariance() {
  const CarnotGroup g = preset("H1");
  const Region window(centered_box(3, 1.0));
  const GridParams grid = GridParams::with_step(0.01);
  const Point y{vec3(0.3, -0.2, 0.5).coords};
  const double lambda = 2.0;
  struct Named {
    std::string name;
    SetOracle set;
  };
  const std::vector<Named> sets = {{"coordinate ball", coordinate_ball(g, g.identity(), 0.6)},
                                   {"E_Z", half_space(g, vec3(0, 0, 1), 0.0)},
                                   {"symdiff of half-space and ball",
                                    boolean_op(half_space(g, vec3(1, 0, 0), 0.0),
                                               coordinate_ball(g, Point{vec3(0.2, 0, 0).coords}, 0.4),
                                               BooleanOp::symmetric_difference)}};
  const std::size_t count = 20000;
  Outcome out;
  std::ostringstream os;
  std::uint64_t seed = 10010;
  for (const auto &[name, e] : sets) {
    const auto base = monotonicity_fraction(g, e, LineMeasureSampler(g, seed++), window, count, grid);
    const auto moved = monotonicity_fraction(g, translate(g, e, y), LineMeasureSampler(g, seed++),
                                             window.translated(g, y), count, grid);
    const auto scaled = monotonicity_fraction(g, dilate(g, e, lambda), LineMeasureSampler(g, seed++),
                                              window.dilated(g, lambda), count, grid.scaled(lambda));
    for (const auto &[kind, other] : {std::pair{"translate", &moved}, std::pair{"dilate", &scaled}}) {
      const double diff = std::abs(other->fraction.value - base.fraction.value);
      const double se = std::hypot(other->fraction.std_error, base.fraction.std_error);
      const bool ok = diff <= 2.0 * se;
      out.pass = out.pass && ok;
      os << name << " " << kind << ": " << base.fraction.value << " vs " << other->fraction.value
         << (ok ? " ok" : " OUT") << "; ";
    }
  }
  os << count << " lines each, tolerance 2 combined binomial stderr";
  out.detail = os.str();
  return out;
}

Outcome refinement() {
  const CarnotGroup g = preset("H1");
  const Region window(centered_box(3, 1.0));
  struct Named {
    std::string name;
    SetOracle set;
  };
  const std::vector<Named> sets = {
      {"vertical half-space", half_space(g, vec3(1, 0, 0), 0.0)},
      {"oblique vertical half-space", half_space(g, vec3(0.6, -0.8, 0), 0.2)},
      {"E_Z", half_space(g, vec3(0, 0, 1), 0.0)},
      {"tilted g1+g2 half-space", half_space(g, vec3(0.3, 0.2, 1.0), 0.1)},
      {"complement of E_Z", complement(half_space(g, vec3(0, 0, 1), 0.0))},
  };
  const std::size_t count = 20000;
  Outcome out;
  std::ostringstream os;
  std::uint64_t seed = 11011;
  for (const auto &[name, e] : sets) {
    if (e.labels().none())
      continue;
    const LineMeasureSampler s(g, seed++);
    const auto coarse = monotonicity_fraction(g, e, s, window, count, GridParams{0.01, 0.04});
    const auto fine = monotonicity_fraction(g, e, s, window, count, GridParams{0.005, 0.02});
    const double diff = std::abs(coarse.fraction.value - fine.fraction.value);
    const double se = std::hypot(coarse.fraction.std_error, fine.fraction.std_error);
    const bool ok = diff <= 2.0 * se;
    out.pass = out.pass && ok;
    os << name << ": " << coarse.fraction.value << " -> " << fine.fraction.value << (ok ? " ok" : " OUT") << "; ";
  }
  os << count << " lines, h 0.01 -> 0.005, min_run 0.04 -> 0.02";
  out.detail = os.str();
  return out;
}

const std::vector<std::function<Outcome()>> kCriteria = {
    algebraic_suite, flow_suite,    volume_law,     oracle_agreement, minimizers_pass, non_minimizer_detected,
    perimeter_homogeneity, density_picture, condition_h, invariance, refinement};

} // namespace

int main(int argc, char **argv) {
  std::vector<int> which;
  if (argc > 1) {
    const int k = std::atoi(argv[1]);
    if (k < 1 || k > static_cast<int>(kCriteria.size())) {
      std::fprintf(stderr, "usage: acceptance [1-%zu]\n", kCriteria.size());
      return 2;
    }
    which.push_back(k);
  } else {
    for (int k = 1; k <= static_cast<int>(kCriteria.size()); ++k)
      which.push_back(k);
  }
  int failures = 0;
  for (int k : which) {
    Outcome o;
    try {
      o = kCriteria[k - 1]();
    } catch (const std::exception &e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::printf("criterion %d: %s  %s\n", k, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
