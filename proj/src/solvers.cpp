// Copyright 2026 The lprec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lprec/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "lprec/errors.hpp"

namespace lprec {

void RecoveryInstance::validate() const {
  const auto m = A.rows();
  const auto n = A.cols();
  if (m < 1 || n < 1) throw DomainError("recovery instance: empty matrix");
  if (y.size() != m) {
    std::ostringstream msg;
    msg << "recovery instance: y has " << y.size() << " entries, A has " << m
        << " rows";
    throw DomainError(msg.str());
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << "recovery instance: p must lie in [0, 1], got " << p;
    throw DomainError(msg.str());
  }
  if (!A.allFinite() || !y.allFinite())
    throw DomainError("recovery instance: non-finite entries");
  if (x_true) {
    if (x_true->size() != n) {
      std::ostringstream msg;
      msg << "recovery instance: x_true has " << x_true->size()
          << " entries, A has " << n << " columns";
      throw DomainError(msg.str());
    }
    const double r = (A * *x_true - y).norm();
    if (!(r <= 1e-8 * (1.0 + y.norm()))) {
      std::ostringstream msg;
      msg << "recovery instance: ||A x_true - y|| = " << r << " is not consistent";
      throw DomainError(msg.str());
    }
  }
}

void IrlsConfig::validate() const {
  if (!(epsilon_floor > 0.0) || !(epsilon_init > epsilon_floor) ||
      !(epsilon_shrink > 0.0 && epsilon_shrink < 1.0) || !(inner_tol > 0.0) ||
      max_outer < 1)
    throw DomainError(
        "IRLS config: need epsilon_init > epsilon_floor > 0, epsilon_shrink in "
        "(0, 1), inner_tol > 0, max_outer >= 1");
}

double lp_quasinorm(const Vector& x, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << "lp_quasinorm: p must lie in [0, 1], got " << p;
    throw DomainError(msg.str());
  }
  if (x.size() == 0) return 0.0;
  if (p == 0.0) {
    const double cut = 1e-12 * x.cwiseAbs().maxCoeff();
    double count = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i)
      if (std::abs(x(i)) > cut) count += 1.0;
    return count;
  }
  if (p == 1.0) return x.cwiseAbs().sum();
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (x(i) != 0.0) s += std::pow(std::abs(x(i)), p);
  return s;
}

namespace {

void finish(SolverResult& r, const RecoveryInstance& inst) {
  r.residual = (inst.A * r.x_hat - inst.y).norm();
  if (inst.x_true)
    r.recovered = (r.x_hat - *inst.x_true).norm() <= kRecoveryTolerance;
}

// Dense primal simplex for min c^T z s.t. M z = b, z >= 0, b >= 0, started
// from a given feasible basis. Entering and leaving variables follow Bland's
// rule. The tableau is rebuilt from the basis with an LU factorization every
// kRefactor pivots and before returning, which bounds drift.
class Simplex {
 public:
  Simplex(Matrix M, Vector b, Vector c, std::vector<int> basis)
      : M_(std::move(M)), b_(std::move(b)), c_(std::move(c)), basis_(std::move(basis)) {
    rebuild();
  }

  // Runs to optimality; returns the number of pivots. Costs are
  // nonnegative, so the program is bounded below: an improving column with
  // no positive entry can only come from rounding in the reduced costs. It
  // is re-examined on a fresh factorization and then skipped.
  int optimize(int max_pivots, int allowed_cols) {
    int pivots = 0;
    bool fresh = true;
    std::vector<char> blocked(allowed_cols, 0);
    while (true) {
      int enter = -1;
      for (int j = 0; j < allowed_cols; ++j) {
        if (!blocked[j] && rc_(j) < -kCostTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) {
        if (fresh) return pivots;
        rebuild();
        fresh = true;
        std::fill(blocked.begin(), blocked.end(), 0);
        continue;
      }
      const int leave = ratio_test(enter);
      if (leave < 0) {
        if (!fresh) {
          rebuild();
          fresh = true;
          std::fill(blocked.begin(), blocked.end(), 0);
        } else {
          blocked[enter] = 1;
        }
        continue;
      }
      pivot(leave, enter);
      fresh = false;
      std::fill(blocked.begin(), blocked.end(), 0);
      if (++pivots >= max_pivots) {
        std::ostringstream msg;
        msg << "simplex: iteration cap of " << max_pivots << " pivots reached";
        throw NonConvergenceError(msg.str());
      }
      if (pivots % kRefactor == 0) {
        rebuild();
        fresh = true;
      }
    }
  }

  // Pivots basic columns at or beyond first_banned out of the basis where
  // possible. Throws RankError for rows that are identically zero.
  void drive_out(int first_banned) {
    for (int i = 0; i < static_cast<int>(basis_.size()); ++i) {
      if (basis_[i] < first_banned) continue;
      int col = -1;
      double best = kPivotTol;
      for (int j = 0; j < first_banned; ++j) {
        if (std::abs(T_(i, j)) > best) {
          best = std::abs(T_(i, j));
          col = j;
        }
      }
      if (col < 0) throw RankError("simplex: constraint matrix is rank deficient");
      pivot(i, col);
    }
    rebuild();
  }

  double objective() const { return c_basis().dot(xb_); }
  const std::vector<int>& basis() const { return basis_; }
  const Vector& basic_values() const { return xb_; }
  const Vector& duals() const { return pi_; }

 private:
  static constexpr double kCostTol = 1e-10;
  static constexpr double kPivotTol = 1e-9;
  static constexpr int kRefactor = 64;

  Vector c_basis() const {
    Vector cb(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) cb(i) = c_(basis_[i]);
    return cb;
  }

  void rebuild() {
    const Eigen::Index m = M_.rows();
    Matrix B(m, m);
    for (Eigen::Index i = 0; i < m; ++i) B.col(i) = M_.col(basis_[i]);
    Eigen::PartialPivLU<Matrix> lu(B);
    T_ = lu.solve(M_);
    xb_ = lu.solve(b_);
    for (Eigen::Index i = 0; i < m; ++i)
      if (xb_(i) < 0.0 && xb_(i) > -1e-9 * (1.0 + b_.cwiseAbs().maxCoeff())) xb_(i) = 0.0;
    pi_ = lu.transpose().solve(c_basis());
    rc_ = c_ - M_.transpose() * pi_;
    for (std::size_t i = 0; i < basis_.size(); ++i) rc_(basis_[i]) = 0.0;
  }

  int ratio_test(int enter) const {
    int leave = -1;
    double best = INFINITY;
    for (Eigen::Index i = 0; i < T_.rows(); ++i) {
      const double a = T_(i, enter);
      if (a <= kPivotTol) continue;
      const double r = std::max(0.0, xb_(i)) / a;
      const double slack = 1e-12 * std::max(1.0, r);
      if (leave < 0 || r < best - slack ||
          (r <= best + slack && basis_[i] < basis_[leave])) {
        best = std::min(best, r);
        leave = static_cast<int>(i);
      }
    }
    return leave;
  }

  void pivot(int row, int col) {
    const double piv = T_(row, col);
    T_.row(row) /= piv;
    xb_(row) /= piv;
    for (Eigen::Index i = 0; i < T_.rows(); ++i) {
      if (i == row) continue;
      const double f = T_(i, col);
      if (f == 0.0) continue;
      T_.row(i) -= f * T_.row(row);
      xb_(i) -= f * xb_(row);
    }
    const double f = rc_(col);
    rc_ -= f * T_.row(row).transpose();
    basis_[row] = col;
  }

  Matrix M_;
  Vector b_;
  Vector c_;
  std::vector<int> basis_;
  Matrix T_;
  Vector xb_;
  Vector rc_;
  Vector pi_;
};

}  // namespace

SolverResult solve_l1(const RecoveryInstance& inst) {
  inst.validate();
  const Eigen::Index m = inst.A.rows();
  const Eigen::Index n = inst.A.cols();
  SolverResult r;
  r.method = "l1";
  if (inst.y.norm() == 0.0) {
    r.x_hat = Vector::Zero(n);
    r.converged = true;
    finish(r, inst);
    return r;
  }
  // x = u - v with u, v >= 0; rows scaled by sign(y) so the right-hand side
  // is nonnegative and the artificial basis is feasible.
  Vector sign = Vector::Ones(m);
  for (Eigen::Index i = 0; i < m; ++i)
    if (inst.y(i) < 0.0) sign(i) = -1.0;
  Matrix M(m, 2 * n + m);
  M.leftCols(n) = sign.asDiagonal() * inst.A;
  M.middleCols(n, n) = -M.leftCols(n);
  M.rightCols(m) = Matrix::Identity(m, m);
  const Vector b = sign.cwiseProduct(inst.y);
  const int real_cols = static_cast<int>(2 * n);
  const int max_pivots = 50 * static_cast<int>(m + 2 * n + m) + 1000;

  std::vector<int> basis(m);
  std::iota(basis.begin(), basis.end(), real_cols);
  Vector phase1_cost = Vector::Zero(2 * n + m);
  phase1_cost.tail(m).setOnes();
  Simplex phase1(M, b, phase1_cost, basis);
  r.iterations = phase1.optimize(max_pivots, static_cast<int>(2 * n + m));
  if (phase1.objective() > 1e-9 * (1.0 + b.norm())) {
    std::ostringstream msg;
    msg << "solve_l1: A x = y is infeasible (phase-one residual "
        << phase1.objective() << ")";
    throw InfeasibleError(msg.str());
  }
  phase1.drive_out(real_cols);

  Vector cost = Vector::Ones(real_cols);
  Simplex phase2(M.leftCols(real_cols), b, cost, phase1.basis());
  r.iterations += phase2.optimize(max_pivots, real_cols);

  Vector z = Vector::Zero(real_cols);
  for (std::size_t i = 0; i < phase2.basis().size(); ++i)
    z(phase2.basis()[i]) = std::max(0.0, phase2.basic_values()(i));
  r.x_hat = z.head(n) - z.tail(n);
  r.objective = r.x_hat.cwiseAbs().sum();
  // Dual of the unscaled problem: pi_y = S pi. Optimal iff ||A^T pi_y|| <= 1.
  const Vector pi_y = sign.cwiseProduct(phase2.duals());
  const double dual_inf = (inst.A.transpose() * pi_y).cwiseAbs().maxCoeff();
  r.duality_gap = std::abs(r.objective - inst.y.dot(pi_y));
  r.converged = dual_inf <= 1.0 + 1e-9 &&
                r.duality_gap <= 1e-8 * (1.0 + r.objective);
  if (!r.converged) {
    std::ostringstream msg;
    msg << "optimality certificate failed: dual infeasibility " << dual_inf - 1.0
        << ", gap " << r.duality_gap;
    r.note = msg.str();
  }
  finish(r, inst);
  return r;
}

SolverResult solve_lp_irls(const RecoveryInstance& inst, const IrlsConfig& cfg) {
  inst.validate();
  cfg.validate();
  const double p = inst.p;
  if (!(p > 0.0 && p < 1.0)) {
    std::ostringstream msg;
    msg << "solve_lp_irls: p must lie in (0, 1), got " << p;
    throw DomainError(msg.str());
  }
  const Eigen::Index n = inst.A.cols();
  SolverResult r;
  r.method = "lp-irls";
  if (inst.y.norm() == 0.0) {
    r.x_hat = Vector::Zero(n);
    r.iterations = 1;
    r.converged = true;
    r.final_epsilon = cfg.epsilon_init;
    finish(r, inst);
    return r;
  }
  auto smoothed = [p](const Vector& x, double eps) {
    return (x.array().square() + eps * eps).pow(0.5 * p).sum();
  };
  Vector x = min_norm_weighted_solve(inst.A, inst.y, Vector::Ones(n));
  double eps = cfg.epsilon_init;
  for (int it = 1; it <= cfg.max_outer; ++it) {
    const Vector w = (x.array().square() + eps * eps).pow(0.5 * p - 1.0).matrix();
    Vector next;
    try {
      next = min_norm_weighted_solve(inst.A, inst.y, w);
    } catch (const ConditioningError& e) {
      r.note = std::string("stopped early: ") + e.what();
      break;
    }
    r.max_objective_increase =
        std::max(r.max_objective_increase, smoothed(next, eps) - smoothed(x, eps));
    const double step = (next - x).norm();
    x = next;
    r.iterations = it;
    if (eps <= cfg.epsilon_floor &&
        step <= cfg.inner_tol * std::max(1.0, x.norm())) {
      r.converged = true;
      break;
    }
    if (step < std::sqrt(eps) / 100.0)
      eps = std::max(cfg.epsilon_floor, eps * cfg.epsilon_shrink);
  }
  r.final_epsilon = eps;
  r.x_hat = x;
  r.objective = lp_quasinorm(x, p);
  finish(r, inst);
  return r;
}

SolverResult solve_l0_exhaustive(const RecoveryInstance& inst, int max_support) {
  inst.validate();
  const int m = static_cast<int>(inst.A.rows());
  const int n = static_cast<int>(inst.A.cols());
  if (max_support < 0) max_support = m;
  max_support = std::min(max_support, n);
  if (n > 24 && max_support > 4) {
    std::ostringstream msg;
    msg << "solve_l0_exhaustive: n=" << n << " with max_support=" << max_support
        << " is too large to enumerate (need n <= 24 or max_support <= 4)";
    throw DomainError(msg.str());
  }
  SolverResult r;
  r.method = "l0";
  const double ynorm = inst.y.norm();
  if (ynorm == 0.0) {
    r.x_hat = Vector::Zero(n);
    r.converged = true;
    finish(r, inst);
    return r;
  }
  std::vector<int> idx;
  for (int k = 1; k <= max_support; ++k) {
    idx.resize(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      ++r.iterations;
      Matrix As(m, k);
      for (int j = 0; j < k; ++j) As.col(j) = inst.A.col(idx[j]);
      Eigen::ColPivHouseholderQR<Matrix> qr(As);
      const Vector xs = qr.solve(inst.y);
      if ((As * xs - inst.y).norm() <= 1e-9 * ynorm) {
        r.x_hat = Vector::Zero(n);
        for (int j = 0; j < k; ++j) r.x_hat(idx[j]) = xs(j);
        r.objective = k;
        r.converged = true;
        finish(r, inst);
        return r;
      }
      // Next k-combination in lexicographic order.
      int i = k - 1;
      while (i >= 0 && idx[i] == n - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  std::ostringstream msg;
  msg << "solve_l0_exhaustive: no solution with at most " << max_support
      << " nonzeros";
  throw BudgetError(msg.str());
}

}  // namespace lprec
