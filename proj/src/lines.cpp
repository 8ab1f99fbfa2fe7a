#include "carnot/lines.hpp"

#include "carnot/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace carnot {

Direction Direction::from_vector(const CarnotGroup &g, const AlgebraVector &v) {
  const int r = g.horizontal_dim();
  if (v.coords.size() != g.dim())
    throw InvalidArgument("direction has the wrong dimension");
  const double norm = v.coords.head(r).norm();
  const double vertical = v.coords.tail(g.dim() - r).norm();
  if (vertical > 1e-12 * std::max(1.0, norm))
    throw NotHorizontal("direction has components outside the first layer");
  if (!(norm > 0.0))
    throw InvalidArgument("direction must be nonzero");
  AlgebraVector unit{Coords::Zero(g.dim())};
  unit.coords.head(r) = v.coords.head(r) / norm;
  return Direction(std::move(unit), r);
}

Direction Direction::basis(const CarnotGroup &g, int a) {
  if (a < 0 || a >= g.horizontal_dim())
    throw InvalidArgument("basis index is not horizontal");
  AlgebraVector v{Coords::Zero(g.dim())};
  v.coords[a] = 1.0;
  return Direction(std::move(v), g.horizontal_dim());
}

ComplementChart::ComplementChart(const CarnotGroup &g, const Direction &x)
    : n_(g.dim()), r_(g.horizontal_dim()), completion_(r_, r_ - 1) {
  const Eigen::VectorXd xv = x.horizontal();
  int pivot = 0;
  for (int j = 1; j < r_; ++j)
    if (std::abs(xv[j]) > std::abs(xv[pivot]))
      pivot = j;

  std::vector<Eigen::VectorXd> basis{xv};
  int col = 0;
  for (int j = 0; j < r_; ++j) {
    if (j == pivot)
      continue;
    Eigen::VectorXd v = Eigen::VectorXd::Unit(r_, j);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto &q : basis)
        v -= v.dot(q) * q;
    v.normalize();
    basis.push_back(v);
    completion_.col(col++) = v;
  }
}

Point ComplementChart::point(const Coords &u) const {
  Point p{Coords::Zero(n_)};
  if (r_ > 1)
    p.coords.head(r_) = completion_ * u.head(r_ - 1);
  p.coords.tail(n_ - r_) = u.tail(n_ - r_);
  return p;
}

Coords ComplementChart::coords(const Point &n) const {
  Coords u(n_ - 1);
  if (r_ > 1)
    u.head(r_ - 1) = completion_.transpose() * n.coords.head(r_);
  u.tail(n_ - r_) = n.coords.tail(n_ - r_);
  return u;
}

Point flow(const CarnotGroup &g, const Direction &x, const Point &p, double t) {
  return multiply(g, p, Point{t * x.vector().coords});
}

Decomposition decompose(const CarnotGroup &g, const Direction &x, const Point &y) {
  const int r = g.horizontal_dim();
  const double t = y.coords.head(r).dot(x.vector().coords.head(r));
  return {multiply(g, y, Point{-t * x.vector().coords}), t};
}

bool in_complement(const CarnotGroup &g, const Direction &x, const Point &p, double tol) {
  const int r = g.horizontal_dim();
  return std::abs(p.coords.head(r).dot(x.vector().coords.head(r))) <= tol;
}

Line translate_line(const CarnotGroup &g, const Point &y, const Line &line) {
  const auto &x = line.direction;
  const double t_y = decompose(g, x, y).t;
  const Point moved = multiply(g, multiply(g, y, line.base), Point{-t_y * x.vector().coords});
  return Line{x, moved};
}

Line dilate_line(const CarnotGroup &g, double lambda, const Line &line) {
  return Line{line.direction, dilate(g, lambda, line.base)};
}

FlowPolynomial::FlowPolynomial(const CarnotGroup &g, const Line &line)
    : n_(g.dim()), degree_(g.step()),
      coeffs_(static_cast<std::size_t>(g.dim()) * (g.step() + 1)) {
  g.multiply_graded_raw(line.base.coords.data(), line.direction.vector().coords.data(),
                        coeffs_.data());
}

void FlowPolynomial::evaluate(double t, Coords &out) const {
  out.resize(n_);
  const double *top = coeffs_.data() + static_cast<std::size_t>(degree_) * n_;
  for (int k = 0; k < n_; ++k)
    out[k] = top[k];
  for (int m = degree_ - 1; m >= 0; --m) {
    const double *c = coeffs_.data() + static_cast<std::size_t>(m) * n_;
    for (int k = 0; k < n_; ++k)
      out[k] = out[k] * t + c[k];
  }
}

Point FlowPolynomial::at(double t) const {
  Point p{Coords(n_)};
  evaluate(t, p.coords);
  return p;
}

double sphere_area(int r) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * r) / std::tgamma(0.5 * r);
}

Box complement_window(const CarnotGroup &g, const Box &bounds) {
  const int n = g.dim();
  const int r = g.horizontal_dim();
  double r1_sq = 0.0;
  for (int j = 0; j < r; ++j)
    r1_sq += std::max(bounds.lo[j] * bounds.lo[j], bounds.hi[j] * bounds.hi[j]);
  const double r1 = std::sqrt(r1_sq);

  // n = y . exp(-tX) with |t X_j| <= |t| <= r1.
  std::array<Interval, kMaxDim> y{}, shift{}, out{};
  for (int c = 0; c < n; ++c) {
    y[c] = Interval(bounds.lo[c], bounds.hi[c]);
    shift[c] = c < r ? Interval(-r1, r1) : Interval(0.0);
  }
  g.multiply_raw(y.data(), shift.data(), out.data());

  Box window{Coords(n - 1), Coords(n - 1)};
  for (int c = 0; c < r - 1; ++c) {
    window.lo[c] = -r1;
    window.hi[c] = r1;
  }
  for (int c = r; c < n; ++c) {
    const Interval w = inflate(out[c]);
    window.lo[c - 1] = w.lo;
    window.hi[c - 1] = w.hi;
  }
  return window;
}

Interval parameter_range(const CarnotGroup &g, const Box &bounds, const Direction &x) {
  const int r = g.horizontal_dim();
  Interval range(0.0);
  for (int j = 0; j < r; ++j) {
    const double xj = x.vector().coords[j];
    const double a = bounds.lo[j] * xj, b = bounds.hi[j] * xj;
    range += Interval(std::min(a, b), std::max(a, b));
  }
  return range;
}

Direction LineMeasureSampler::direction(std::uint64_t index) const {
  CounterRng rng(seed_, index, 1);
  const int r = g_->horizontal_dim();
  AlgebraVector v{Coords::Zero(g_->dim())};
  do {
    for (int j = 0; j < r; ++j)
      v.coords[j] = rng.normal();
  } while (v.coords.head(r).squaredNorm() == 0.0);
  return Direction::from_vector(*g_, v);
}

Line LineMeasureSampler::sample(std::uint64_t index, const Box &window) const {
  Direction x = direction(index);
  CounterRng rng(seed_, index, 2);
  Coords u(window.dim());
  for (int c = 0; c < window.dim(); ++c)
    u[c] = rng.uniform(window.lo[c], window.hi[c]);
  ComplementChart chart(*g_, x);
  Point base = chart.point(u);
  return Line{std::move(x), std::move(base)};
}

std::vector<Line> sample_lines(const LineMeasureSampler &sampler, const Box &window,
                               std::size_t count) {
  if (window.dim() != sampler.group().dim() - 1)
    throw EmptyWindow("line window must have dimension n - 1");
  if (window.empty() && window.dim() > 0)
    throw EmptyWindow("line window has zero volume");
  std::vector<Line> lines;
  lines.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    lines.push_back(sampler.sample(i, window));
  return lines;
}

} // namespace carnot
