#pragma once

// Design parameterization: Wendland C2 RBF grid, level-set evaluation with
// analytic gradients, the smoothed Heaviside with its adaptive parameter,
// and the initial-guess interpolation system.

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <stdexcept>
#include <vector>

#include "fbtopo/dual.hpp"
#include "fbtopo/quadtree.hpp"
#include "fbtopo/vec2.hpp"

namespace fbtopo {

// Wendland kernel max{0, 1-r}^4 (4r+1): value 1 at r=0, support [0,1).
template <class T>
T wendland(const T& r) {
  if (value(r) >= 1.0) return T(0.0);
  const T m = 1.0 - r;
  const T m2 = m * m;
  return m2 * m2 * (4.0 * r + 1.0);
}

// w'(r)/r = -20 (1-r)^3; the /r cancellation keeps gradients finite at r=0.
template <class T>
T wendland_deriv_over_r(const T& r) {
  if (value(r) >= 1.0) return T(0.0);
  const T m = 1.0 - r;
  return -20.0 * m * m * m;
}

// C1-smoothed Heaviside (cubic ramp on [-beta, beta]).
template <class T>
T smoothed_heaviside(const T& y, const T& beta) {
  if (value(y) < -value(beta)) return T(0.0);
  if (value(y) > value(beta)) return T(1.0);
  const T t = y / beta;
  return (t - t * t * t / 3.0) * 0.75 + 0.5;
}

// Partial derivatives of H_beta(y); zero outside the ramp and continuous
// across its edges.
inline double smoothed_heaviside_dy(double y, double beta) {
  if (std::abs(y) >= beta) return 0.0;
  const double t = y / beta;
  return 0.75 * (1.0 - t * t) / beta;
}

inline double smoothed_heaviside_dbeta(double y, double beta) {
  if (std::abs(y) >= beta) return 0.0;
  const double t = y / beta;
  return -0.75 * t * (1.0 - t * t) / beta;
}

struct DesignVector {
  Eigen::VectorXd alpha;  // N*N coefficients, row-major: k = i*N + j
  double lo = -1e20;
  double hi = 1e20;

  void clamp() {
    for (int k = 0; k < alpha.size(); ++k)
      alpha[k] = std::min(hi, std::max(lo, alpha[k]));
  }
};

// Regular N x N knot grid on the design rectangle D with the associated
// support radius and a quadtree over the knot supports.
class RbfGrid {
 public:
  RbfGrid(int n, double xmin, double xmax, double ymin, double ymax)
      : n_(n), xmin_(xmin), xmax_(xmax), ymin_(ymin), ymax_(ymax) {
    if (n < 2) throw std::invalid_argument("RbfGrid: need N >= 2");
    if (!(xmax > xmin) || !(ymax > ymin))
      throw std::invalid_argument("RbfGrid: empty rectangle");
    const double dx = (xmax - xmin) / (n - 1);
    const double dy = (ymax - ymin) / (n - 1);
    rs_ = 4.0 * std::max(dx, dy);
    knots_.resize((size_t)n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        knots_[(size_t)i * n + j] = Vec2{xmin + j * dx, ymin + i * dy};
    tree_ = Quadtree(xmin - rs_, ymin - rs_, xmax + rs_, ymax + rs_);
    for (int k = 0; k < n * n; ++k) tree_.add_disk(k, knots_[k], rs_);
  }

  int n() const { return n_; }
  int size() const { return n_ * n_; }
  double support_radius() const { return rs_; }
  const Vec2& knot(int k) const { return knots_[k]; }
  const std::vector<Vec2>& knots() const { return knots_; }
  double xmin() const { return xmin_; }
  double xmax() const { return xmax_; }
  double ymin() const { return ymin_; }
  double ymax() const { return ymax_; }

  std::vector<int> query(const Vec2& p) const { return tree_.query(p); }

  // Basis value of knot k at (x,y); shared by the fast path and the
  // brute-force oracle so both produce bitwise-identical terms.
  template <class T>
  T basis(int k, const T& x, const T& y) const {
    const Vec2& c = knots_[k];
    const T dx = x - c.x;
    const T dy = y - c.y;
    const T r = sqrt(dx * dx + dy * dy) / rs_;
    return wendland(r);
  }

  // Value and spatial gradient of psi = sum alpha_k basis_k at (x,y),
  // restricted to the knots the quadtree reports.
  template <class T>
  void eval(const Eigen::VectorXd& alpha, const T& x, const T& y, T& val,
            T& gx, T& gy) const {
    val = T(0.0);
    gx = T(0.0);
    gy = T(0.0);
    for (int k : query(Vec2{value(x), value(y)})) {
      const Vec2& c = knots_[k];
      const T dx = x - c.x;
      const T dy = y - c.y;
      const T r = sqrt(dx * dx + dy * dy) / rs_;
      if (value(r) >= 1.0) continue;
      const T m = 1.0 - r;
      const T m2 = m * m;
      val += alpha[k] * (m2 * m2 * (4.0 * r + 1.0));
      const T s = alpha[k] * (-20.0 * m * m2) / (rs_ * rs_);
      gx += s * dx;
      gy += s * dy;
    }
  }

  // Value and gradient of a single basis function (design-derivative path).
  void basis_with_grad(int k, const Vec2& p, double& val, Vec2& grad) const {
    const Vec2 d = p - knots_[k];
    const double r = d.norm() / rs_;
    if (r >= 1.0) {
      val = 0.0;
      grad = Vec2{0.0, 0.0};
      return;
    }
    const double m = 1.0 - r;
    const double m2 = m * m;
    val = m2 * m2 * (4.0 * r + 1.0);
    const double s = -20.0 * m * m2 / (rs_ * rs_);
    grad = Vec2{s * d.x, s * d.y};
  }

 private:
  int n_;
  double xmin_, xmax_, ymin_, ymax_;
  double rs_;
  std::vector<Vec2> knots_;
  Quadtree tree_;
};

struct LevelSetSample {
  double value;
  Vec2 gradient;
};

inline LevelSetSample eval_levelset(const RbfGrid& grid,
                                    const Eigen::VectorXd& alpha,
                                    const Vec2& p) {
  double v, gx, gy;
  grid.eval(alpha, p.x, p.y, v, gx, gy);
  return {v, Vec2{gx, gy}};
}

// beta(x) = delta * |grad psi(x)| + 1e-6 (floor keeps H_beta defined where
// the gradient vanishes).
inline double adaptive_beta(const RbfGrid& grid, const Eigen::VectorXd& alpha,
                            const Vec2& p, double delta) {
  const LevelSetSample s = eval_levelset(grid, alpha, p);
  return delta * s.gradient.norm() + 1e-6;
}

// Gray-region half width after the i-th re-initialization.
inline double gray_halfwidth(int i, int i_max, double h) {
  return 0.5 * (i_max - i + 1) * h;
}

// Interpolation of a target field at the knots: solve the symmetric
// positive definite collocation system psi_N(knot) = target(knot).
// Dense Cholesky up to N = 40, sparse beyond; one step of iterative
// refinement keeps the knot residual at solver precision.
template <class TargetFn>
Eigen::VectorXd fit_initial_alpha(const RbfGrid& grid, TargetFn&& target) {
  const int m = grid.size();
  Eigen::VectorXd t(m);
  for (int k = 0; k < m; ++k) {
    const Vec2& p = grid.knot(k);
    t[k] = target(p);
  }

  Eigen::VectorXd alpha;
  if (grid.n() <= 40) {
    Eigen::MatrixXd A(m, m);
    for (int p = 0; p < m; ++p)
      for (int q = 0; q < m; ++q)
        A(p, q) = grid.basis(q, grid.knot(p).x, grid.knot(p).y);
    Eigen::LLT<Eigen::MatrixXd> llt(A);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("fit_initial_alpha: factorization failed");
    alpha = llt.solve(t);
    alpha += llt.solve(t - A * alpha);
    const double res = (A * alpha - t).lpNorm<Eigen::Infinity>();
    if (res > 1e-10)
      throw std::runtime_error("fit_initial_alpha: residual above 1e-10");
  } else {
    std::vector<Eigen::Triplet<double>> trips;
    for (int p = 0; p < m; ++p)
      for (int q : grid.query(grid.knot(p))) {
        const double v = grid.basis(q, grid.knot(p).x, grid.knot(p).y);
        if (v != 0.0) trips.emplace_back(p, q, v);
      }
    Eigen::SparseMatrix<double> A(m, m);
    A.setFromTriplets(trips.begin(), trips.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(A);
    if (ldlt.info() != Eigen::Success)
      throw std::runtime_error("fit_initial_alpha: factorization failed");
    alpha = ldlt.solve(t);
    alpha += ldlt.solve(t - A * alpha);
    const double res = (A * alpha - t).lpNorm<Eigen::Infinity>();
    if (res > 1e-10)
      throw std::runtime_error("fit_initial_alpha: residual above 1e-10");
  }
  return alpha;
}

// Level-set field consumed by the state solver: either the RBF
// parameterization or the analytic circular level set R - |x| used by the
// annulus verification path.
class LevelSet {
 public:
  static LevelSet rbf(const RbfGrid& grid, Eigen::VectorXd alpha) {
    LevelSet f;
    f.grid_ = &grid;
    f.alpha_ = std::move(alpha);
    return f;
  }
  static LevelSet circle(double radius) {
    LevelSet f;
    f.radius_ = radius;
    return f;
  }

  bool is_rbf() const { return grid_ != nullptr; }
  const RbfGrid* grid() const { return grid_; }
  const Eigen::VectorXd& alpha() const { return alpha_; }

  template <class T>
  void eval(const T& x, const T& y, T& val, T& gx, T& gy) const {
    if (grid_) {
      grid_->eval(alpha_, x, y, val, gx, gy);
      return;
    }
    const T r2 = x * x + y * y;
    if (value(r2) == 0.0) {
      val = T(radius_);
      gx = T(0.0);
      gy = T(0.0);
      return;
    }
    const T r = sqrt(r2);
    val = radius_ - r;
    gx = -x / r;
    gy = -y / r;
  }

 private:
  const RbfGrid* grid_ = nullptr;
  Eigen::VectorXd alpha_;
  double radius_ = 1.0;
};

}  // namespace fbtopo
