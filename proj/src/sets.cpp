#include "carnot/sets.hpp"

#include "carnot/errors.hpp"
#include "carnot/region.hpp"

#include <cmath>
#include <sstream>

namespace carnot {

namespace {

constexpr SetLabels kAllLabels{SetLabel::monotone, SetLabel::precisely_monotone,
                               SetLabel::constant_normal, SetLabel::local_minimizer};

std::string coords_string(const Coords &c) {
  std::ostringstream os;
  os << '(';
  for (int k = 0; k < c.size(); ++k)
    os << (k ? ", " : "") << c[k];
  os << ')';
  return os.str();
}

Box hull(const Box &a, const Box &b) {
  return Box{a.lo.cwiseMin(b.lo), a.hi.cwiseMax(b.hi)};
}

} // namespace

std::string SetLabels::to_string() const {
  if (none())
    return "none_declared";
  std::string out;
  auto add = [&](SetLabel l, const char *name) {
    if (has(l))
      out += (out.empty() ? "" : ",") + std::string(name);
  };
  add(SetLabel::monotone, "monotone");
  add(SetLabel::precisely_monotone, "precisely_monotone");
  add(SetLabel::constant_normal, "constant_normal");
  add(SetLabel::local_minimizer, "local_minimizer");
  return out;
}

SetOracle::SetOracle(Predicate member, SetLabels labels, std::string description,
                     std::optional<Box> bounds)
    : member_(std::make_shared<const Predicate>(std::move(member))), labels_(labels),
      description_(std::move(description)), bounds_(std::move(bounds)) {}

SetOracle SetOracle::with_labels(SetLabels labels) const {
  SetOracle out = *this;
  out.labels_ = labels;
  return out;
}

SetOracle half_space(const CarnotGroup &g, const AlgebraVector &normal, double offset) {
  if (normal.coords.size() != g.dim())
    throw InvalidArgument("half-space normal has the wrong dimension");
  if (normal.coords.squaredNorm() == 0.0)
    throw ZeroNormal();
  const auto &strat = g.strat();
  const int r = strat.horizontal_dim();
  const int low_end = strat.step() >= 2 ? r + strat.layer_size(2) : r;
  const bool horizontal = normal.coords.tail(g.dim() - r).squaredNorm() == 0.0;
  const bool low_layers = normal.coords.tail(g.dim() - low_end).squaredNorm() == 0.0;

  SetLabels labels;
  if (horizontal)
    labels = kAllLabels;
  else if (low_layers)
    labels = {SetLabel::monotone, SetLabel::precisely_monotone, SetLabel::local_minimizer};

  std::ostringstream os;
  os << "half_space(normal=" << coords_string(normal.coords) << ", offset=" << offset << ")";
  Coords nrm = normal.coords;
  return SetOracle([nrm, offset](const Point &p) { return p.coords.dot(nrm) > offset; }, labels,
                   os.str());
}

SetOracle metric_ball(const HomogeneousDistance &d, const Point &center, double radius) {
  if (!(radius > 0.0))
    throw NonPositiveRadius("ball radius must be positive");
  const CarnotGroup &g = d.group();
  const Box bounds = d.ball_bounds(center, radius);
  const Point center_inv = inverse(center);
  std::ostringstream os;
  os << "metric_ball(center=" << coords_string(center.coords) << ", radius=" << radius << ")";
  return SetOracle(
      [d, &g, center_inv, radius, bounds](const Point &p) {
        if (!bounds.contains(p))
          return false;
        return d.norm(multiply(g, center_inv, p)) < radius;
      },
      {}, os.str(), bounds);
}

SetOracle coordinate_ball(const CarnotGroup &g, const Point &center, double radius) {
  if (!(radius > 0.0))
    throw NonPositiveRadius("ball radius must be positive");
  const Box bounds{(center.coords.array() - radius).matrix(), (center.coords.array() + radius).matrix()};
  std::ostringstream os;
  os << "coordinate_ball(center=" << coords_string(center.coords) << ", radius=" << radius << ")";
  const Coords c = center.coords;
  const double r2 = radius * radius;
  (void)g;
  return SetOracle([c, r2](const Point &p) { return (p.coords - c).squaredNorm() < r2; }, {},
                   os.str(), bounds);
}

SetOracle empty_set(const CarnotGroup &g) {
  return SetOracle([](const Point &) { return false; }, kAllLabels, "empty",
                   Box{Coords::Zero(g.dim()), Coords::Zero(g.dim())});
}

SetOracle whole_group(const CarnotGroup &) {
  return SetOracle([](const Point &) { return true; }, kAllLabels, "whole_group");
}

SetOracle complement(const SetOracle &e) {
  return SetOracle([e](const Point &p) { return !e.contains(p); }, e.labels().only(kAllLabels),
                   "complement(" + e.description() + ")");
}

SetOracle boolean_op(const SetOracle &e, const SetOracle &f, BooleanOp op) {
  std::optional<Box> bounds;
  const auto &be = e.bounds();
  const auto &bf = f.bounds();
  switch (op) {
  case BooleanOp::intersection:
    if (be && bf)
      bounds = Box{be->lo.cwiseMax(bf->lo), be->hi.cwiseMin(bf->hi)};
    else if (be)
      bounds = be;
    else if (bf)
      bounds = bf;
    return SetOracle([e, f](const Point &p) { return e.contains(p) && f.contains(p); }, {},
                     "intersection(" + e.description() + ", " + f.description() + ")", bounds);
  case BooleanOp::union_of:
    if (be && bf)
      bounds = hull(*be, *bf);
    return SetOracle([e, f](const Point &p) { return e.contains(p) || f.contains(p); }, {},
                     "union(" + e.description() + ", " + f.description() + ")", bounds);
  case BooleanOp::difference:
    return SetOracle([e, f](const Point &p) { return e.contains(p) && !f.contains(p); }, {},
                     "difference(" + e.description() + ", " + f.description() + ")", be);
  case BooleanOp::symmetric_difference:
    if (be && bf)
      bounds = hull(*be, *bf);
    return SetOracle([e, f](const Point &p) { return e.contains(p) != f.contains(p); }, {},
                     "symdiff(" + e.description() + ", " + f.description() + ")", bounds);
  }
  throw InvalidArgument("unknown boolean operation");
}

SetOracle perturb(const SetOracle &e, const SetOracle &ball) {
  if (!ball.bounds())
    throw InvalidArgument("perturbation must be bounded");
  SetOracle out = boolean_op(e, ball, BooleanOp::symmetric_difference);
  out.description_ = "perturb(" + e.description() + ", " + ball.description() + ")";
  out.perturbation_ = ball.bounds();
  return out;
}

SetOracle translate(const CarnotGroup &g, const SetOracle &e, const Point &y) {
  const Point y_inv = inverse(y);
  std::optional<Box> bounds;
  if (e.bounds())
    bounds = product_bounds(g, Box{y.coords, y.coords}, *e.bounds());
  return SetOracle([&g, e, y_inv](const Point &p) { return e.contains(multiply(g, y_inv, p)); },
                   e.labels(), "translate(" + coords_string(y.coords) + ", " + e.description() + ")",
                   bounds);
}

SetOracle dilate(const CarnotGroup &g, const SetOracle &e, double lambda) {
  if (!(lambda > 0.0))
    throw NonPositiveLambda(lambda);
  std::optional<Box> bounds;
  if (e.bounds())
    bounds = Box{dilate(g, lambda, Point{e.bounds()->lo}).coords,
                 dilate(g, lambda, Point{e.bounds()->hi}).coords};
  const double inv = 1.0 / lambda;
  std::ostringstream os;
  os << "dilate(" << lambda << ", " << e.description() << ")";
  return SetOracle([&g, e, inv](const Point &p) { return e.contains(dilate(g, inv, p)); },
                   e.labels(), os.str(), bounds);
}

} // namespace carnot
