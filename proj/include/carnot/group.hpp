#pragma once

#include "carnot/bch.hpp"

#include <Eigen/Core>

#include <string>
#include <vector>

namespace carnot {

inline constexpr int kMaxDim = 16;

/// Coordinate vector in the adapted basis. Fixed capacity, no heap traffic.
using Coords = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;

/// Layer dimensions (d_1, ..., d_s) of a stratified Lie algebra.
class Stratification {
public:
  explicit Stratification(std::vector<int> layer_dims);

  const std::vector<int> &layer_dims() const { return dims_; }
  int step() const { return static_cast<int>(dims_.size()); }
  int dim() const { return n_; }
  int horizontal_dim() const { return dims_.front(); }
  int homogeneous_dim() const { return q_; }

  /// 1-based layer containing coordinate `index` (0-based).
  int layer_of(int index) const { return layer_[index]; }
  /// First coordinate index of 1-based `layer`.
  int layer_begin(int layer) const { return begin_[layer - 1]; }
  int layer_size(int layer) const { return dims_[layer - 1]; }

private:
  std::vector<int> dims_;
  std::vector<int> layer_;
  std::vector<int> begin_;
  int n_ = 0;
  int q_ = 0;
};

/// Lie algebra element.
struct AlgebraVector {
  Coords coords;
};

/// Group element in exponential coordinates of the first kind.
struct Point {
  Coords coords;
};

/// [e_i, e_j] has component `value` along e_k. Indices are 0-based.
struct StructureConstant {
  int i;
  int j;
  int k;
  double value;
};

/// Axis-aligned box in coordinates.
struct Box {
  Coords lo;
  Coords hi;

  bool empty() const;
  bool contains(const Coords &p) const;
  bool contains(const Point &p) const { return contains(p.coords); }
  double volume() const;
  int dim() const { return static_cast<int>(lo.size()); }
};

Box make_box(const Coords &lo, const Coords &hi);
/// Box [-half_width, half_width]^n.
Box centered_box(int n, double half_width);

class CarnotGroup {
public:
  const std::string &name() const { return name_; }
  const Stratification &strat() const { return strat_; }
  int dim() const { return strat_.dim(); }
  int horizontal_dim() const { return strat_.horizontal_dim(); }
  int step() const { return strat_.step(); }
  int homogeneous_dim() const { return strat_.homogeneous_dim(); }

  /// Nonzero structure constants, both orderings of (i, j) listed.
  const std::vector<StructureConstant> &constants() const { return constants_; }
  double constant(int i, int j, int k) const { return dense_[(i * dim() + j) * dim() + k]; }
  const BchTable &bch() const { return bch_; }

  Point identity() const { return Point{Coords::Zero(dim())}; }

  /// out = [a, b]. `out` must not alias the inputs.
  template <class T> void bracket_raw(const T *a, const T *b, T *out) const;
  /// out = log(exp a exp b). `out` must not alias the inputs.
  template <class T> void multiply_raw(const T *a, const T *b, T *out) const;
  /// Splits log(exp a exp b) by degree in b: slot m (0..step) of `out`
  /// receives the part homogeneous of degree m in b, so that
  /// log(exp a exp tb) = sum_m t^m out[m].
  template <class T> void multiply_graded_raw(const T *a, const T *b, T *out) const;

private:
  friend CarnotGroup build_group(Stratification, std::vector<StructureConstant>, std::string);

  CarnotGroup(std::string name, Stratification strat, std::vector<StructureConstant> constants);

  template <class T> void evaluate_nodes(const T *a, const T *b, std::vector<T> &vals) const;

  std::string name_;
  Stratification strat_;
  std::vector<StructureConstant> constants_;
  std::vector<double> dense_;
  BchTable bch_;
};

/// Assembles a group from structure constants given for i < j or both
/// orders (mirror entries are filled in). Validates antisymmetry, grading,
/// the generating rank condition and the Jacobi identity.
CarnotGroup build_group(Stratification strat, std::vector<StructureConstant> constants,
                        std::string name = "");

/// Largest |[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]| over all triples.
double max_jacobi_residual(const CarnotGroup &g);

/// Rank of span{[e_a, e_b] : a in layer 1, b in layer i} for i = 1..s-1.
std::vector<int> generating_ranks(const CarnotGroup &g);

AlgebraVector bracket(const CarnotGroup &g, const AlgebraVector &a, const AlgebraVector &b);
Point multiply(const CarnotGroup &g, const Point &p, const Point &q);
Point inverse(const Point &p);
Point exp(const AlgebraVector &v);
AlgebraVector log(const Point &p);

/// delta_lambda: scales layer-i coordinates by lambda^i.
Point dilate(const CarnotGroup &g, double lambda, const Point &p);
AlgebraVector dilate(const CarnotGroup &g, double lambda, const AlgebraVector &v);

/// Lebesgue (= Haar) volume of a coordinate box; 0 for empty boxes.
double haar_volume_box(const CarnotGroup &g, const Box &box);

/// Layer-i block of a coordinate vector.
Coords layer(const CarnotGroup &g, const Coords &c, int layer_index);

// ---------------------------------------------------------------------------

template <class T> void CarnotGroup::bracket_raw(const T *a, const T *b, T *out) const {
  const int n = dim();
  for (int k = 0; k < n; ++k)
    out[k] = T(0.0);
  for (const auto &c : constants_)
    out[c.k] += T(c.value) * (a[c.i] * b[c.j]);
}

template <class T>
void CarnotGroup::evaluate_nodes(const T *a, const T *b, std::vector<T> &vals) const {
  const int n = dim();
  vals.resize(bch_.nodes.size() * static_cast<std::size_t>(n));
  for (std::size_t idx = 0; idx < bch_.nodes.size(); ++idx) {
    const auto &node = bch_.nodes[idx];
    const T *letter = node.letter == 0 ? a : b;
    T *dst = vals.data() + idx * n;
    if (node.child < 0) {
      for (int k = 0; k < n; ++k)
        dst[k] = letter[k];
    } else {
      bracket_raw(letter, vals.data() + static_cast<std::size_t>(node.child) * n, dst);
    }
  }
}

template <class T> void CarnotGroup::multiply_raw(const T *a, const T *b, T *out) const {
  const int n = dim();
  if (step() == 1) {
    for (int k = 0; k < n; ++k)
      out[k] = a[k] + b[k];
    return;
  }
  thread_local std::vector<T> vals;
  evaluate_nodes(a, b, vals);
  for (int k = 0; k < n; ++k)
    out[k] = T(0.0);
  for (const auto &term : bch_.terms) {
    const T *v = vals.data() + static_cast<std::size_t>(term.node) * n;
    for (int k = 0; k < n; ++k)
      out[k] += T(term.coeff) * v[k];
  }
}

template <class T> void CarnotGroup::multiply_graded_raw(const T *a, const T *b, T *out) const {
  const int n = dim();
  thread_local std::vector<T> vals;
  evaluate_nodes(a, b, vals);
  for (int k = 0; k < n * (step() + 1); ++k)
    out[k] = T(0.0);
  for (const auto &term : bch_.terms) {
    const T *v = vals.data() + static_cast<std::size_t>(term.node) * n;
    T *dst = out + static_cast<std::size_t>(term.y_degree) * n;
    for (int k = 0; k < n; ++k)
      dst[k] += T(term.coeff) * v[k];
  }
}

} // namespace carnot
