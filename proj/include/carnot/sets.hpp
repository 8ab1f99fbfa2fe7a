#pragma once

#include "carnot/gauge.hpp"
#include "carnot/group.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace carnot {

enum class SetLabel : unsigned {
  monotone = 1u << 0,
  precisely_monotone = 1u << 1,
  constant_normal = 1u << 2,
  local_minimizer = 1u << 3,
};

/// Bit set of declared ground-truth properties. Declarations are checked by
/// the monotonicity and perimeter suites, never trusted.
class SetLabels {
public:
  constexpr SetLabels() = default;
  constexpr SetLabels(std::initializer_list<SetLabel> labels) {
    for (auto l : labels)
      bits_ |= static_cast<unsigned>(l);
  }
  bool has(SetLabel l) const { return (bits_ & static_cast<unsigned>(l)) != 0; }
  bool none() const { return bits_ == 0; }
  unsigned bits() const { return bits_; }
  SetLabels only(SetLabels keep) const {
    SetLabels out;
    out.bits_ = bits_ & keep.bits_;
    return out;
  }
  std::string to_string() const;

private:
  unsigned bits_ = 0;
};

/// Membership oracle for a subset of G. Pure and reentrant.
class SetOracle {
public:
  using Predicate = std::function<bool(const Point &)>;

  SetOracle(Predicate member, SetLabels labels, std::string description,
            std::optional<Box> bounds = std::nullopt);

  bool contains(const Point &p) const { return (*member_)(p); }
  bool operator()(const Point &p) const { return contains(p); }

  const SetLabels &labels() const { return labels_; }
  const std::string &description() const { return description_; }
  /// When present, every member lies in this coordinate box.
  const std::optional<Box> &bounds() const { return bounds_; }
  /// For competitors built by `perturb`: box containing E symdiff F.
  const std::optional<Box> &perturbation_bounds() const { return perturbation_; }

  SetOracle with_labels(SetLabels labels) const;

private:
  friend SetOracle perturb(const SetOracle &, const SetOracle &);

  std::shared_ptr<const Predicate> member_;
  SetLabels labels_;
  std::string description_;
  std::optional<Box> bounds_;
  std::optional<Box> perturbation_;
};

/// {p : <log p, normal> > offset} with the adapted basis orthonormal on all
/// of g. Normals supported in g_1 + g_2 give precisely monotone sets (the
/// first two layers are affine along every line); a normal in g_1 also has
/// constant normal.
SetOracle half_space(const CarnotGroup &g, const AlgebraVector &normal, double offset);

/// Open ball {p : d(center, p) < radius} of the box gauge.
SetOracle metric_ball(const HomogeneousDistance &d, const Point &center, double radius);

/// Open Euclidean ball in exponential coordinates.
SetOracle coordinate_ball(const CarnotGroup &g, const Point &center, double radius);

SetOracle empty_set(const CarnotGroup &g);
SetOracle whole_group(const CarnotGroup &g);

SetOracle complement(const SetOracle &e);

enum class BooleanOp { intersection, union_of, difference, symmetric_difference };
SetOracle boolean_op(const SetOracle &e, const SetOracle &f, BooleanOp op);

/// Competitor F = E symdiff ball; records the ball's bounds as the
/// perturbation region. Throws InvalidArgument if `ball` is unbounded.
SetOracle perturb(const SetOracle &e, const SetOracle &ball);

/// y . E
SetOracle translate(const CarnotGroup &g, const SetOracle &e, const Point &y);
/// delta_lambda(E)
SetOracle dilate(const CarnotGroup &g, const SetOracle &e, double lambda);

} // namespace carnot
