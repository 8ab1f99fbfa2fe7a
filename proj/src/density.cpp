#include "carnot/density.hpp"

#include "carnot/errors.hpp"
#include "carnot/parallel.hpp"

#include <cmath>

namespace carnot {

namespace {

constexpr std::uint64_t kVolumeStream = 21;
constexpr std::uint64_t kProfileStream = 22;

void uniform_in(const Box &box, CounterRng &rng, Point &out) {
  for (int c = 0; c < box.dim(); ++c)
    out.coords[c] = rng.uniform(box.lo[c], box.hi[c]);
}

void check_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw DegenerateBall("ball radius must be positive and finite, got " + std::to_string(r));
}

} // namespace

VolumeLawReport ball_volume_law(const HomogeneousDistance &d, const std::vector<double> &radii,
                                std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0)
    throw InvalidArgument("ball_volume_law needs samples > 0");
  const CarnotGroup &g = d.group();
  VolumeLawReport report;
  report.radii = radii;
  report.samples_per_radius = samples;
  Point q{Coords(g.dim())};
  for (std::size_t k = 0; k < radii.size(); ++k) {
    check_radius(radii[k]);
    const Box box = d.ball_bounds(radii[k]);
    CounterRng rng(seed, k, kVolumeStream);
    std::uint64_t hits = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
      uniform_in(box, rng, q);
      hits += d.in_ball(q, radii[k]);
    }
    Estimate frac = binomial_estimate(hits, samples, seed);
    frac.value *= box.volume();
    frac.std_error *= box.volume();
    report.volumes.push_back(frac);
  }
  if (radii.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(radii.size());
    for (std::size_t k = 0; k < radii.size(); ++k) {
      const double x = std::log(radii[k]);
      const double y = std::log(report.volumes[k].value);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    report.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    report.intercept = (sy - report.slope * sx) / n;
  }
  return report;
}

DensityProfile density_profile(const SetOracle &e, const Point &x, const std::vector<double> &radii,
                               std::uint64_t samples_per_radius, const HomogeneousDistance &d,
                               std::uint64_t seed) {
  if (samples_per_radius == 0)
    throw InvalidArgument("density_profile needs samples > 0");
  for (std::size_t k = 0; k < radii.size(); ++k) {
    check_radius(radii[k]);
    if (k > 0 && !(radii[k] < radii[k - 1]))
      throw InvalidArgument("density_profile radii must strictly decrease");
  }
  const CarnotGroup &g = d.group();
  DensityProfile profile;
  profile.point = x;
  profile.radii = radii;
  Point q{Coords(g.dim())};
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const Box box = d.ball_bounds(radii[k]);
    CounterRng rng(seed, k, kProfileStream);
    std::uint64_t hits = 0, accepted = 0, tries = 0;
    while (accepted < samples_per_radius) {
      if (++tries > 1000 * samples_per_radius + 1000)
        throw DegenerateBall("rejection sampling found no ball points");
      uniform_in(box, rng, q);
      if (!d.in_ball(q, radii[k]))
        continue;
      ++accepted;
      hits += e.contains(multiply(g, x, q));
    }
    const Estimate r = binomial_estimate(hits, samples_per_radius, seed);
    profile.ratios.push_back(r);
    profile.h_values.push_back(std::min(r.value, 1.0 - r.value));
  }
  return profile;
}

std::string to_string(PointClass c) {
  switch (c) {
  case PointClass::interior:
    return "interior";
  case PointClass::exterior:
    return "exterior";
  case PointClass::boundary:
    return "boundary";
  case PointClass::undetermined:
    break;
  }
  return "undetermined";
}

PointClass classify_point(const DensityProfile &profile, double eps, double r_min) {
  if (!(eps > 0.0 && eps < 0.5))
    throw InvalidArgument("classify_point needs 0 < eps < 1/2");
  bool any = false, boundary = true;
  std::size_t smallest = 0;
  for (std::size_t k = 0; k < profile.radii.size(); ++k) {
    if (profile.radii[k] < r_min)
      continue;
    any = true;
    smallest = k;
    boundary = boundary && profile.h_values[k] >= eps;
  }
  if (!any)
    return PointClass::undetermined;
  if (boundary)
    return PointClass::boundary;
  const double ratio = profile.ratios[smallest].value;
  if (ratio >= 1.0 - eps)
    return PointClass::interior;
  if (ratio <= eps)
    return PointClass::exterior;
  return PointClass::undetermined;
}

BoundaryScan boundary_scan(const SetOracle &e, const Box &box, double grid_step, double eps,
                           const std::vector<double> &radii, double r_min,
                           std::uint64_t samples_per_radius, const HomogeneousDistance &d,
                           std::uint64_t seed, unsigned workers) {
  if (!(grid_step > 0.0))
    throw BadGrid("boundary_scan needs grid_step > 0");
  if (box.empty() || box.dim() != d.group().dim())
    throw EmptyWindow("boundary_scan box is empty or has the wrong dimension");
  if (!(eps > 0.0 && eps < 0.5))
    throw InvalidArgument("boundary_scan needs 0 < eps < 1/2");
  BoundaryScan scan;
  scan.box = box;
  scan.grid_step = grid_step;
  scan.eps = eps;
  scan.r_min = r_min;
  scan.samples_per_radius = samples_per_radius;
  scan.seed = seed;
  std::size_t total = 1;
  for (int c = 0; c < box.dim(); ++c) {
    const int n = static_cast<int>(std::floor((box.hi[c] - box.lo[c]) / grid_step + 1e-9)) + 1;
    scan.shape.push_back(n);
    total *= static_cast<std::size_t>(n);
  }
  scan.points.resize(total);
  parallel_for(total, workers, [&](std::size_t i) {
    Point x{Coords(box.dim())};
    std::size_t rest = i;
    for (int c = box.dim() - 1; c >= 0; --c) {
      const std::size_t n = static_cast<std::size_t>(scan.shape[c]);
      x.coords[c] = box.lo[c] + grid_step * static_cast<double>(rest % n);
      rest /= n;
    }
    ScanPoint &sp = scan.points[i];
    sp.profile = density_profile(e, x, radii, samples_per_radius, d, mix64(seed + i));
    sp.cls = classify_point(sp.profile, eps, r_min);
  });
  return scan;
}

std::vector<double> radius_ladder(double r0, int levels) {
  check_radius(r0);
  std::vector<double> out;
  for (int k = 0; k < levels; ++k)
    out.push_back(std::ldexp(r0, -k));
  return out;
}

std::vector<SmallDensityViolation> small_density_violations(const BoundaryScan &scan,
                                                            double eps_test) {
  std::vector<SmallDensityViolation> out;
  for (std::size_t i = 0; i < scan.points.size(); ++i) {
    const auto &p = scan.points[i].profile;
    for (std::size_t k = 0; k + 1 < p.radii.size(); ++k) {
      if (std::abs(p.radii[k + 1] - 0.5 * p.radii[k]) > 1e-12 * p.radii[k])
        continue;
      const double a = p.ratios[k].value, b = p.ratios[k + 1].value;
      const bool small_in = a > 0.0 && a < eps_test && b > 0.0;
      const bool small_out = a < 1.0 && 1.0 - a < eps_test && b < 1.0;
      if (small_in || small_out)
        out.push_back({i, p.radii[k], a, b});
    }
  }
  return out;
}

} // namespace carnot
