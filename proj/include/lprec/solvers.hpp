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

// Sparse recovery programs: l1 by linear programming, lp (0 < p < 1) by
// iteratively reweighted least squares, and exhaustive l0 search.

#ifndef LPREC_SOLVERS_HPP
#define LPREC_SOLVERS_HPP

#include <optional>
#include <string>

#include "lprec/linalg.hpp"

namespace lprec {

// Success threshold on ||x_hat - x_true||_2.
inline constexpr double kRecoveryTolerance = 1e-4;

struct RecoveryInstance {
  Matrix A;
  Vector y;
  double p = 1.0;
  std::optional<Vector> x_true;

  // Shapes, finiteness, p in [0, 1], and consistency of x_true with y.
  void validate() const;
};

struct SolverResult {
  std::string method;
  Vector x_hat;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  std::optional<bool> recovered;
  double residual = 0.0;  // ||A x_hat - y||_2

  // l1 only: duality gap of the returned vertex.
  double duality_gap = 0.0;
  // IRLS only: largest increase of the smoothed objective over an accepted
  // step at fixed smoothing, and the final smoothing parameter.
  double max_objective_increase = 0.0;
  double final_epsilon = 0.0;
  std::string note;
};

struct IrlsConfig {
  double epsilon_init = 1.0;
  double epsilon_floor = 1e-8;
  double epsilon_shrink = 0.1;
  double inner_tol = 1e-9;
  int max_outer = 500;

  void validate() const;
};

// sum |x_i|^p for p > 0; for p = 0 the number of entries above
// 1e-12 * max|x_i|.
double lp_quasinorm(const Vector& x, double p);

SolverResult solve_l1(const RecoveryInstance& inst);
SolverResult solve_lp_irls(const RecoveryInstance& inst, const IrlsConfig& cfg = {});
// Requires n <= 24 or max_support <= 4. max_support < 0 means m.
SolverResult solve_l0_exhaustive(const RecoveryInstance& inst, int max_support = -1);

}  // namespace lprec

#endif  // LPREC_SOLVERS_HPP
