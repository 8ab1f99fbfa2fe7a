#include "carnot/errors.hpp"
#include "carnot/perimeter.hpp"
#include "carnot/presets.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace carnot;

namespace {

AlgebraVector vec3(double a, double b, double c) { return AlgebraVector{(Coords(3) << a, b, c).finished()}; }

} // namespace

class PerimeterH1 : public ::testing::Test {
protected:
  CarnotGroup g = preset("H1");
  Region omega{centered_box(3, 1.0)};
  GridParams grid = GridParams::with_step(0.01);
};

TEST_F(PerimeterH1, PerLineExamples) {
  const Direction x = Direction::basis(g, 0);
  const SetOracle e = half_space(g, vec3(1, 0, 0), 0.0);
  // Misses the window entirely.
  EXPECT_EQ(per_line_perimeter(g, e, Line{x, Point{vec3(0, 5, 0).coords}}, omega, grid), 0);
  EXPECT_EQ(per_line_perimeter(g, e, Line{x, g.identity()}, omega, grid), 1);
  const SetOracle ball = coordinate_ball(g, g.identity(), 0.3);
  EXPECT_EQ(per_line_perimeter(g, ball, Line{x, g.identity()}, omega, grid), 2);
}

TEST_F(PerimeterH1, SeparateComponentsCountSeparately) {
  // Window made of two trace components: count the E boundary in each.
  LineTrace trace;
  trace.h = 0.01;
  trace.inside = {1, 1, 1, 1, 1, 1, 0, 0, 1, 1, 1, 1, 1, 1};
  const std::vector<std::uint8_t> values = {0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0};
  EXPECT_EQ(count_in_components(trace, values, GridParams{0.01, 0.02}), 2);
}

TEST_F(PerimeterH1, EmptySetIsZero) {
  const auto est = estimate_perimeter(g, empty_set(g), omega, LineMeasureSampler(g, 1), 1000, grid);
  EXPECT_EQ(est.value, 0.0);
  EXPECT_EQ(est.std_error, 0.0);
}

TEST_F(PerimeterH1, HalfSpaceCountsAreZeroOrOne) {
  const auto est = estimate_perimeter(g, half_space(g, vec3(1, 0, 0), 0.0), omega, LineMeasureSampler(g, 2), 5000, grid);
  EXPECT_LE(est.max_line_count, 1u);
  EXPECT_GT(est.value, 0.0);
  const auto ez = estimate_perimeter(g, half_space(g, vec3(0, 0, 1), 0.0), omega, LineMeasureSampler(g, 3), 5000, grid);
  EXPECT_GE(ez.fraction_at_most_one, 0.99);
}

TEST_F(PerimeterH1, ComplementInvarianceIsExact) {
  const SetOracle e = coordinate_ball(g, g.identity(), 0.5);
  const LineMeasureSampler s(g, 4);
  const auto a = estimate_perimeter(g, e, omega, s, 2000, grid);
  const auto b = estimate_perimeter(g, complement(e), omega, s, 2000, grid);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST_F(PerimeterH1, SubadditiveOverDisjointWindows) {
  const SetOracle e = half_space(g, vec3(0.6, 0.8, 0), 0.0);
  const LineMeasureSampler s(g, 5);
  const Region left(make_box((Coords(3) << -1, -1, -1).finished(), (Coords(3) << 0, 1, 1).finished()));
  const Region right(make_box((Coords(3) << 0, -1, -1).finished(), (Coords(3) << 1, 1, 1).finished()));
  const auto whole = estimate_perimeter(g, e, omega, s, 20000, grid);
  const auto a = estimate_perimeter(g, e, left, LineMeasureSampler(g, 6), 20000, grid);
  const auto b = estimate_perimeter(g, e, right, LineMeasureSampler(g, 7), 20000, grid);
  const double se = std::sqrt(whole.std_error * whole.std_error + a.std_error * a.std_error + b.std_error * b.std_error);
  EXPECT_LE(a.value + b.value, whole.value + 3.0 * se);
}

TEST_F(PerimeterH1, Preconditions) {
  const SetOracle e = half_space(g, vec3(1, 0, 0), 0.0);
  EXPECT_THROW(estimate_perimeter(g, e, omega, LineMeasureSampler(g, 1), 999, grid), InvalidArgument);
  const HomogeneousDistance d = HomogeneousDistance::calibrate(g);
  const std::vector<SetOracle> near_edge = {metric_ball(d, Point{vec3(0.95, 0, 0).coords}, 0.1)};
  EXPECT_THROW(minimality_test(g, e, omega, near_edge, LineMeasureSampler(g, 1), 1000, grid),
               PerturbationTouchesBoundary);
}

TEST_F(PerimeterH1, WholeGroupMinimalityIsTrivial) {
  const HomogeneousDistance d = HomogeneousDistance::calibrate(g);
  std::vector<SetOracle> balls = {metric_ball(d, g.identity(), 0.2), metric_ball(d, Point{vec3(0.3, 0.3, 0).coords}, 0.1)};
  const auto rep = minimality_test(g, whole_group(g), omega, balls, LineMeasureSampler(g, 8), 2000, grid);
  EXPECT_EQ(rep.base.value, 0.0);
  for (const auto &p : rep.perturbations)
    EXPECT_GE(p.delta, 0.0);
  EXPECT_TRUE(rep.pass);
}

TEST_F(PerimeterH1, WorkerCountDoesNotChangeEstimate) {
  const SetOracle e = coordinate_ball(g, g.identity(), 0.5);
  const auto a = estimate_perimeter(g, e, omega, LineMeasureSampler(g, 9), 2000, grid, 1);
  const auto b = estimate_perimeter(g, e, omega, LineMeasureSampler(g, 9), 2000, grid, 4);
  EXPECT_EQ(a.value, b.value);
}

TEST(PerimeterR2, DiskAgainstCauchyCrofton) {
  // Cauchy-Crofton: unoriented lines with d theta dp integrate the crossing
  // count to 2 * length; oriented lines (theta over the full circle) to 4 *
  // length.
  const CarnotGroup g = preset("R2");
  const Region omega(centered_box(2, 1.0));
  const SetOracle disk = coordinate_ball(g, g.identity(), 0.5);
  const auto est = estimate_perimeter(g, disk, omega, LineMeasureSampler(g, 10), 20000, GridParams::with_step(0.002));
  const double want = 4.0 * (2.0 * std::numbers::pi * 0.5);
  EXPECT_NEAR(est.value, want, 3.0 * est.std_error + 0.01 * want);
}
