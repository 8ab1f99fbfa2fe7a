#include "carnot/gauge.hpp"
#include "carnot/presets.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

using namespace carnot;

TEST(Gauge, HomogeneousLeftInvariantSymmetric) {
  for (const auto &name : preset_names()) {
    const CarnotGroup g = preset(name);
    const HomogeneousDistance d = HomogeneousDistance::calibrate(g);
    CounterRng rng(41, 0);
    for (int i = 0; i < 200; ++i) {
      const Point x = oracle::random_point(g, rng), y = oracle::random_point(g, rng),
                  z = oracle::random_point(g, rng);
      EXPECT_EQ(d(x, x), 0.0);
      EXPECT_NEAR(d(dilate(g, 2.0, x), dilate(g, 2.0, y)), 2.0 * d(x, y), 1e-12 * (1 + d(x, y))) << name;
      EXPECT_NEAR(d(multiply(g, z, x), multiply(g, z, y)), d(x, y), 1e-12 * (1 + d(x, y))) << name;
      EXPECT_NEAR(d(x, y), d(y, x), 1e-12 * (1 + d(x, y))) << name;
    }
  }
}

TEST(Gauge, TriangleInequalityOnFreshSamples) {
  for (const auto &name : preset_names()) {
    const CarnotGroup g = preset(name);
    const HomogeneousDistance d = HomogeneousDistance::calibrate(g);
    EXPECT_LE(d.triangle_ratio(), 1.0);
    EXPECT_LE(max_triangle_ratio(d, 777, 5000), 1.0) << name;
  }
}

TEST(Gauge, BallBoundsAndMembership) {
  const CarnotGroup g = preset("engel");
  const HomogeneousDistance d = HomogeneousDistance::calibrate(g);
  const Point c{(Coords(4) << 0.2, -0.1, 0.3, 0.05).finished()};
  const Box b = d.ball_bounds(c, 0.5);
  CounterRng rng(42, 0);
  const Box local = d.ball_bounds(0.5);
  int inside = 0;
  for (int i = 0; i < 20000; ++i) {
    Point q{Coords(4)};
    for (int k = 0; k < 4; ++k)
      q.coords[k] = rng.uniform(local.lo[k], local.hi[k]);
    EXPECT_EQ(d.in_ball(q, 0.5), d.norm(q) < 0.5);
    if (d.norm(q) < 0.5) {
      ++inside;
      EXPECT_TRUE(b.contains(multiply(g, c, q)));
    }
  }
  EXPECT_GT(inside, 100);
}
