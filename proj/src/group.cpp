#include "carnot/group.hpp"

#include "carnot/errors.hpp"

#include <Eigen/LU>

#include <cmath>
#include <sstream>

namespace carnot {

JacobiViolation::JacobiViolation(int i_, int j_, int k_, double residual_)
    : Error([&] {
        std::ostringstream os;
        os << "Jacobi identity fails for (e_" << i_ + 1 << ", e_" << j_ + 1 << ", e_" << k_ + 1
           << "): residual " << residual_;
        return os.str();
      }()),
      i(i_), j(j_), k(k_), residual(residual_) {}

NonPositiveLambda::NonPositiveLambda(double lambda)
    : Error("dilation factor must be positive, got " + std::to_string(lambda)) {}

Stratification::Stratification(std::vector<int> layer_dims) : dims_(std::move(layer_dims)) {
  if (dims_.empty())
    throw GradingViolation("stratification needs at least one layer");
  int layer_index = 1;
  for (int d : dims_) {
    if (d < 1)
      throw GradingViolation("layer " + std::to_string(layer_index) + " has dimension " +
                             std::to_string(d) + "; every layer must be nonzero");
    begin_.push_back(n_);
    for (int c = 0; c < d; ++c)
      layer_.push_back(layer_index);
    n_ += d;
    q_ += layer_index * d;
    ++layer_index;
  }
  if (n_ > kMaxDim)
    throw InvalidArgument("dimension " + std::to_string(n_) + " exceeds the supported maximum " +
                          std::to_string(kMaxDim));
}

bool Box::empty() const {
  for (int c = 0; c < dim(); ++c)
    if (!(hi[c] > lo[c]))
      return true;
  return false;
}

bool Box::contains(const Coords &p) const {
  for (int c = 0; c < dim(); ++c)
    if (p[c] < lo[c] || p[c] > hi[c])
      return false;
  return true;
}

double Box::volume() const {
  if (empty())
    return 0.0;
  double v = 1.0;
  for (int c = 0; c < dim(); ++c)
    v *= hi[c] - lo[c];
  return v;
}

Box make_box(const Coords &lo, const Coords &hi) {
  if (lo.size() != hi.size())
    throw InvalidArgument("box corners have different dimensions");
  return Box{lo, hi};
}

Box centered_box(int n, double half_width) {
  return Box{Coords::Constant(n, -half_width), Coords::Constant(n, half_width)};
}

CarnotGroup::CarnotGroup(std::string name, Stratification strat,
                         std::vector<StructureConstant> constants)
    : name_(std::move(name)), strat_(std::move(strat)), constants_(std::move(constants)) {
  const int n = strat_.dim();
  dense_.assign(static_cast<std::size_t>(n) * n * n, 0.0);
  for (const auto &c : constants_)
    dense_[(c.i * n + c.j) * n + c.k] = c.value;
  bch_ = make_bch_table(strat_.step());
}

double max_jacobi_residual(const CarnotGroup &g) {
  const int n = g.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        // sum_m c_ij^m c_mk^l + c_jk^m c_mi^l + c_ki^m c_mj^l
        for (int l = 0; l < n; ++l) {
          double r = 0.0;
          for (int m = 0; m < n; ++m)
            r += g.constant(i, j, m) * g.constant(m, k, l) +
                 g.constant(j, k, m) * g.constant(m, i, l) +
                 g.constant(k, i, m) * g.constant(m, j, l);
          worst = std::max(worst, std::abs(r));
        }
      }
  return worst;
}

namespace {

std::pair<int, int> worst_jacobi_triple(const CarnotGroup &g, double tol, int &k_out,
                                        double &residual) {
  const int n = g.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double r = 0.0;
          for (int m = 0; m < n; ++m)
            r += g.constant(i, j, m) * g.constant(m, k, l) +
                 g.constant(j, k, m) * g.constant(m, i, l) +
                 g.constant(k, i, m) * g.constant(m, j, l);
          if (std::abs(r) > tol) {
            k_out = k;
            residual = r;
            return {i, j};
          }
        }
  return {-1, -1};
}

} // namespace

std::vector<int> generating_ranks(const CarnotGroup &g) {
  const auto &strat = g.strat();
  std::vector<int> ranks;
  for (int layer_i = 1; layer_i < strat.step(); ++layer_i) {
    const int target = layer_i + 1;
    const int rows = strat.layer_size(target);
    Eigen::MatrixXd span(rows, strat.horizontal_dim() * strat.layer_size(layer_i));
    int col = 0;
    for (int a = 0; a < strat.horizontal_dim(); ++a)
      for (int b = strat.layer_begin(layer_i); b < strat.layer_begin(layer_i) + strat.layer_size(layer_i);
           ++b, ++col)
        for (int r = 0; r < rows; ++r)
          span(r, col) = g.constant(a, b, strat.layer_begin(target) + r);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(span);
    lu.setThreshold(1e-10);
    ranks.push_back(static_cast<int>(lu.rank()));
  }
  return ranks;
}

CarnotGroup build_group(Stratification strat, std::vector<StructureConstant> constants,
                        std::string name) {
  const int n = strat.dim();
  std::vector<double> dense(static_cast<std::size_t>(n) * n * n, 0.0);
  std::vector<bool> set(dense.size(), false);
  auto idx = [n](int i, int j, int k) { return static_cast<std::size_t>((i * n + j) * n + k); };
  auto assign = [&](int i, int j, int k, double v) {
    const auto at = idx(i, j, k);
    if (set[at] && dense[at] != v) {
      std::ostringstream os;
      os << "conflicting constants for [e_" << i + 1 << ", e_" << j + 1 << "] along e_" << k + 1
         << ": " << dense[at] << " vs " << v;
      throw AntisymmetryViolation(os.str());
    }
    dense[at] = v;
    set[at] = true;
  };

  for (const auto &c : constants) {
    if (c.i < 0 || c.j < 0 || c.k < 0 || c.i >= n || c.j >= n || c.k >= n)
      throw InvalidArgument("structure constant index out of range");
    if (c.value == 0.0)
      continue;
    if (c.i == c.j) {
      std::ostringstream os;
      os << "[e_" << c.i + 1 << ", e_" << c.i + 1 << "] must vanish";
      throw AntisymmetryViolation(os.str());
    }
    assign(c.i, c.j, c.k, c.value);
    assign(c.j, c.i, c.k, -c.value);
  }

  std::vector<StructureConstant> nonzero;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double v = dense[idx(i, j, k)];
        if (v == 0.0)
          continue;
        const int expected = strat.layer_of(i) + strat.layer_of(j);
        if (strat.layer_of(k) != expected) {
          std::ostringstream os;
          os << "[e_" << i + 1 << ", e_" << j + 1 << "] has a component along e_" << k + 1
             << " (layer " << strat.layer_of(k) << "), expected layer " << expected;
          if (expected > strat.step())
            os << " > step " << strat.step() << " (bracket must vanish)";
          throw GradingViolation(os.str());
        }
        nonzero.push_back({i, j, k, v});
      }

  CarnotGroup g(std::move(name), std::move(strat), std::move(nonzero));

  const auto ranks = generating_ranks(g);
  for (std::size_t li = 0; li < ranks.size(); ++li) {
    const int layer_i = static_cast<int>(li) + 1;
    const int needed = g.strat().layer_size(layer_i + 1);
    if (ranks[li] != needed) {
      std::ostringstream os;
      os << "[g_1, g_" << layer_i << "] has rank " << ranks[li] << " but layer " << layer_i + 1
         << " has dimension " << needed << " (defect " << needed - ranks[li] << ")";
      throw GradingViolation(os.str());
    }
  }

  double scale = 1.0;
  for (const auto &c : g.constants())
    scale = std::max(scale, std::abs(c.value));
  const double tol = 1e-12 * scale * scale;
  int k = -1;
  double residual = 0.0;
  if (auto [i, j] = worst_jacobi_triple(g, tol, k, residual); i >= 0)
    throw JacobiViolation(i, j, k, residual);

  return g;
}

AlgebraVector bracket(const CarnotGroup &g, const AlgebraVector &a, const AlgebraVector &b) {
  AlgebraVector out{Coords(g.dim())};
  g.bracket_raw(a.coords.data(), b.coords.data(), out.coords.data());
  return out;
}

Point multiply(const CarnotGroup &g, const Point &p, const Point &q) {
  Point out{Coords(g.dim())};
  g.multiply_raw(p.coords.data(), q.coords.data(), out.coords.data());
  return out;
}

Point inverse(const Point &p) { return Point{-p.coords}; }
Point exp(const AlgebraVector &v) { return Point{v.coords}; }
AlgebraVector log(const Point &p) { return AlgebraVector{p.coords}; }

namespace {
Coords dilate_coords(const CarnotGroup &g, double lambda, const Coords &c) {
  if (!(lambda > 0.0))
    throw NonPositiveLambda(lambda);
  Coords out = c;
  double w = 1.0;
  for (int layer_i = 1; layer_i <= g.step(); ++layer_i) {
    w *= lambda;
    out.segment(g.strat().layer_begin(layer_i), g.strat().layer_size(layer_i)) *= w;
  }
  return out;
}
} // namespace

Point dilate(const CarnotGroup &g, double lambda, const Point &p) {
  return Point{dilate_coords(g, lambda, p.coords)};
}

AlgebraVector dilate(const CarnotGroup &g, double lambda, const AlgebraVector &v) {
  return AlgebraVector{dilate_coords(g, lambda, v.coords)};
}

double haar_volume_box(const CarnotGroup &g, const Box &box) {
  if (box.dim() != g.dim())
    throw InvalidArgument("box dimension does not match the group");
  return box.volume();
}

Coords layer(const CarnotGroup &g, const Coords &c, int layer_index) {
  return c.segment(g.strat().layer_begin(layer_index), g.strat().layer_size(layer_index));
}

} // namespace carnot
