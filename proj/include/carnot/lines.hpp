#pragma once

#include "carnot/group.hpp"
#include "carnot/interval.hpp"
#include "carnot/random.hpp"
#include "carnot/region.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace carnot {

/// Unit vector of the first layer.
class Direction {
public:
  /// Normalizes `v`; throws NotHorizontal if v has components outside the
  /// first layer and InvalidArgument if v = 0.
  static Direction from_vector(const CarnotGroup &g, const AlgebraVector &v);
  static Direction basis(const CarnotGroup &g, int a);

  const AlgebraVector &vector() const { return v_; }
  /// First-layer block, length r.
  Eigen::VectorXd horizontal() const { return v_.coords.head(r_); }

private:
  Direction(AlgebraVector v, int r) : v_(std::move(v)), r_(r) {}
  AlgebraVector v_;
  int r_ = 0;
};

/// Oriented line {base . exp(tX)}; `base` lies in N_X.
struct Line {
  Direction direction;
  Point base;
};

/// Exponential coordinates on N_X = exp(X^perp) in the basis
/// (X_2, ..., X_r, e_{r+1}, ..., e_n), where X_2..X_r complete X to an
/// orthonormal basis of the first layer. The completion runs Gram-Schmidt
/// over the adapted basis vectors in index order, skipping the one on which
/// X has the largest component.
class ComplementChart {
public:
  ComplementChart(const CarnotGroup &g, const Direction &x);

  Point point(const Coords &u) const;
  Coords coords(const Point &n) const;
  /// r x (r-1), orthonormal columns orthogonal to X.
  const Eigen::MatrixXd &completion() const { return completion_; }

private:
  int n_ = 0;
  int r_ = 0;
  Eigen::MatrixXd completion_;
};

/// Phi_X(p, t) = p . exp(tX).
Point flow(const CarnotGroup &g, const Direction &x, const Point &p, double t);

struct Decomposition {
  Point base; // in N_X
  double t = 0.0;
};

/// Unique (n, t) in N_X x R with y = n . exp(tX). Since the first layer of
/// the product is additive, t = <layer_1(y), X> and n = y . exp(-tX).
Decomposition decompose(const CarnotGroup &g, const Direction &x, const Point &y);

/// True when the first-layer part of p is orthogonal to X (within tol).
bool in_complement(const CarnotGroup &g, const Direction &x, const Point &p, double tol = 1e-9);

/// y . L = (X, y . n . exp(-t_y X)) with t_y the flow coordinate of y.
Line translate_line(const CarnotGroup &g, const Point &y, const Line &line);
/// delta_lambda(L) = (X, delta_lambda(n)); the parameter rescales t -> lambda t.
Line dilate_line(const CarnotGroup &g, double lambda, const Line &line);

/// Phi_X(n, t) as a polynomial of degree <= step in t, precomputed per line.
class FlowPolynomial {
public:
  FlowPolynomial(const CarnotGroup &g, const Line &line);
  void evaluate(double t, Coords &out) const;
  Point at(double t) const;

private:
  int n_ = 0;
  int degree_ = 0;
  std::vector<double> coeffs_; // (degree + 1) blocks of n
};

/// Total measure of the unit sphere S^{r-1}.
double sphere_area(int r);

/// Box in N_X coordinates (dimension n - 1) containing the N_X component
/// of every point of `bounds`, for every unit direction. Lines whose base
/// falls outside it cannot meet `bounds`.
Box complement_window(const CarnotGroup &g, const Box &bounds);

/// Flow parameters {t : layer_1 of n . exp(tX) projected on X lies in the
/// layer-1 shadow of `bounds`}; every t with Phi_X(n, t) in `bounds` is in it.
Interval parameter_range(const CarnotGroup &g, const Box &bounds, const Direction &x);

/// Counter-based realization of the line measure restricted to a window:
/// direction uniform on the sphere (normalized Gaussian), base uniform in a
/// box of N_X coordinates. Line i depends only on (seed, i).
class LineMeasureSampler {
public:
  LineMeasureSampler(const CarnotGroup &g, std::uint64_t seed) : g_(&g), seed_(seed) {}

  const CarnotGroup &group() const { return *g_; }
  std::uint64_t seed() const { return seed_; }

  Direction direction(std::uint64_t index) const;
  Line sample(std::uint64_t index, const Box &window) const;

private:
  const CarnotGroup *g_;
  std::uint64_t seed_;
};

/// First `count` lines of the sampler's stream. Throws EmptyWindow for a
/// window of zero volume or wrong dimension.
std::vector<Line> sample_lines(const LineMeasureSampler &sampler, const Box &window, std::size_t count);

} // namespace carnot
