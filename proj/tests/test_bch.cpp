#include "carnot/bch.hpp"
#include "carnot/errors.hpp"
#include "carnot/presets.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace carnot;

namespace {

Rational coeff_of(const std::vector<BchWord> &words, const std::string &w) {
  for (const auto &bw : words)
    if (bw.word == w)
      return bw.coeff;
  return Rational(0);
}

} // namespace

TEST(BchSeries, LowDegreeCoefficients) {
  // log(e^X e^Y) = X + Y + [X,Y]/2 + [X,[X,Y]]/12 - [Y,[X,Y]]/12 + ...
  const auto s = bch_associative_series(3);
  EXPECT_EQ(coeff_of(s, "X"), Rational(1));
  EXPECT_EQ(coeff_of(s, "Y"), Rational(1));
  EXPECT_EQ(coeff_of(s, "XY"), Rational(1, 2));
  EXPECT_EQ(coeff_of(s, "YX"), Rational(-1, 2));
  EXPECT_EQ(coeff_of(s, "XX"), Rational(0));
  EXPECT_EQ(coeff_of(s, "XXY"), Rational(1, 12));
  EXPECT_EQ(coeff_of(s, "XYX"), Rational(-1, 6));
  EXPECT_EQ(coeff_of(s, "YXY"), Rational(-1, 6));
  EXPECT_EQ(coeff_of(s, "XYY"), Rational(1, 12));
}

TEST(BchSeries, CommutativeImageIsExpOfSum) {
  // With commuting letters log(e^x e^y) = x + y, so the coefficients of all
  // words with a given letter content cancel from degree 2 on.
  std::map<std::pair<int, int>, Rational> content;
  for (const auto &w : bch_associative_series(6)) {
    int a = 0;
    for (char c : w.word)
      a += c == 'X';
    content[{a, static_cast<int>(w.word.size()) - a}] += w.coeff;
  }
  for (const auto &[ab, c] : content) {
    if (ab.first + ab.second >= 2)
      EXPECT_EQ(c, Rational(0)) << ab.first << "," << ab.second;
  }
  EXPECT_EQ(coeff_of(bch_associative_series(6), "XXXXXX"), Rational(0));
}

TEST(BchSeries, RejectsDepthOutOfRange) {
  EXPECT_THROW(bch_associative_series(0), InvalidArgument);
  EXPECT_THROW(bch_associative_series(9), InvalidArgument);
}

TEST(BchTable, LieProjectionDropsSquareEndings) {
  const BchTable t = make_bch_table(4);
  for (const auto &w : t.words) {
    const auto k = w.word.size();
    if (k >= 2)
      EXPECT_NE(w.word[k - 1], w.word[k - 2]) << w.word;
  }
}

TEST(Multiply, HeisenbergClosedForm) {
  for (auto [name, m] : {std::pair{"H1", 1}, std::pair{"H2", 2}}) {
    const CarnotGroup g = preset(name);
    CounterRng rng(3, 0);
    for (int i = 0; i < 200; ++i) {
      const Point p = oracle::random_point(g, rng, 2.0), q = oracle::random_point(g, rng, 2.0);
      const Point want = oracle::heisenberg_product(m, p, q);
      EXPECT_LE((multiply(g, p, q).coords - want.coords).norm(), 1e-13) << name;
    }
  }
}

TEST(Multiply, FreeStepTwoAgainstTensorAlgebra) {
  const CarnotGroup g = preset("free_2_3");
  CounterRng rng(4, 0);
  for (int i = 0; i < 200; ++i) {
    const Point p = oracle::random_point(g, rng, 1.5), q = oracle::random_point(g, rng, 1.5);
    EXPECT_LE((multiply(g, p, q).coords - oracle::free_step2_product(3, p, q).coords).norm(), 1e-12);
  }
}

TEST(Multiply, EngelAgainstTensorAlgebra) {
  const CarnotGroup g = preset("engel");
  CounterRng rng(5, 0);
  for (int i = 0; i < 200; ++i) {
    const Point p = oracle::random_point(g, rng, 1.5), q = oracle::random_point(g, rng, 1.5);
    EXPECT_LE((multiply(g, p, q).coords - oracle::engel_product(p, q).coords).norm(), 1e-12);
  }
}

TEST(Multiply, AbelianIsAddition) {
  const CarnotGroup g = preset("R4");
  CounterRng rng(6, 0);
  const Point p = oracle::random_point(g, rng), q = oracle::random_point(g, rng);
  EXPECT_EQ(multiply(g, p, q).coords, p.coords + q.coords);
}

TEST(Multiply, GradedSplitSumsToProduct) {
  const CarnotGroup g = preset("engel");
  CounterRng rng(7, 0);
  const Point a = oracle::random_point(g, rng), b = oracle::random_point(g, rng);
  std::vector<double> graded((g.step() + 1) * g.dim());
  g.multiply_graded_raw(a.coords.data(), b.coords.data(), graded.data());
  for (double t : {-1.3, 0.4, 2.0}) {
    Coords sum = Coords::Zero(g.dim());
    double tm = 1.0;
    for (int m = 0; m <= g.step(); ++m, tm *= t)
      for (int c = 0; c < g.dim(); ++c)
        sum[c] += tm * graded[m * g.dim() + c];
    const Point want = multiply(g, a, Point{t * b.coords});
    EXPECT_LE((sum - want.coords).norm(), 1e-12);
  }
}
