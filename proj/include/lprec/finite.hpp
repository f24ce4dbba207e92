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

// Finite undersampling-ratio bounds on strong and weak recovery thresholds.
//
// Every bound is a chain of Chernoff estimates over a gamma-net of the unit
// sphere of the null space: lambda_max and lambda_min bracket ||Bz||_p^p / n,
// and the recovery thresholds follow by comparing those with the largest
// possible support contribution. gamma, epsilon, t, a and rho are all
// optimized numerically; the routines below return the optimizers too, so
// each reported number can be re-derived from its record.

#ifndef LPREC_FINITE_HPP
#define LPREC_FINITE_HPP

#include <string>
#include <vector>

#include "lprec/quadrature.hpp"

namespace lprec {

struct ExponentSearchConfig {
  // Net radii, ascending in (0, 1).
  std::vector<double> gamma_grid;
  // Slack epsilon of the lambda_min search, given as fractions of alpha in
  // (0, 1]; epsilon = fraction * alpha.
  std::vector<double> epsilon_grid;
  double t_max = 1e15;   // largest tilt accepted by the inner minimizations
  double t_tol = 1e-10;  // relative tolerance on the minimizing t
  double a_tol = 1e-6;   // bisection tolerance on a, a-tilde and rho
  int rho_grid_resolution = 8;  // coarse rho scan before the weak bisection
  QuadratureConfig quad;
  int threads = 0;  // 0: worker_count()

  // 60 log-spaced gammas in [1e-6, 0.9], 20 epsilon fractions j/20.
  static ExponentSearchConfig defaults();
  void validate() const;
};

double binary_entropy(double rho);

struct ChernoffResult {
  double t_opt = 0.0;
  double value = 0.0;     // min over t > 0 of log E[e^{tY}] - a t
  double residual = 0.0;  // stationarity residual E_t[Y] - a at t_opt
};

// Y = |X|^p. Requires a > E|X|^p.
ChernoffResult chernoff_upper_exponent(double a, double p,
                                       const ExponentSearchConfig& cfg);
// Y = |X|^p S with S ~ Bernoulli(1/2). Requires a_tilde > E|X|^p / 2.
ChernoffResult chernoff_indicator_exponent(double a_tilde, double p,
                                           const ExponentSearchConfig& cfg);

struct LambdaMax {
  double value = 0.0;
  double gamma = 0.0;     // minimizing net radius
  double a = 0.0;         // a(alpha, p, gamma) at that radius
  double exponent = 0.0;  // net term + Chernoff exponent at (gamma, a); < 0
};

struct LambdaMin {
  double value = 0.0;
  double gamma = 0.0;
  double epsilon = 0.0;
  double exponent = 0.0;          // exact small-ball exponent at the winner
  bool bound_feasible = false;    // winner also passes the closed-form test
  LambdaMax lambda_max;
};

LambdaMax lambda_max_search(double alpha, double p,
                            const ExponentSearchConfig& cfg);
double compute_lambda_max(double alpha, double p,
                          const ExponentSearchConfig& cfg);

// Throws InfeasibleError when no (gamma, epsilon) pair makes the small-ball
// exponent negative, or when the best value is not positive.
LambdaMin lambda_min_search(double alpha, double p,
                            const ExponentSearchConfig& cfg);
double compute_lambda_min(double alpha, double p,
                          const ExponentSearchConfig& cfg);

LambdaMax lambda_tilde_max_search(double alpha, double p, double rho,
                                  const ExponentSearchConfig& cfg);
double compute_lambda_tilde_max(double alpha, double p, double rho,
                                const ExponentSearchConfig& cfg);

// One evaluated point of a rho search.
struct RhoProbe {
  double rho = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

struct BoundResult {
  std::string kind;  // "strong" or "weak"
  double alpha = 0.0;
  double p = 0.0;
  double lambda_max = 0.0;
  double lambda_min = 0.0;
  double rho_bound = 0.0;
  double winning_gamma = 0.0;
  double winning_epsilon = 0.0;
  // Largest (least negative) exponent among those that justify the bound,
  // in nats per dimension.
  double exponent_margin = 0.0;

  // Weak bound only: lambda-tilde-max at rho_bound and lambda_min at the
  // shifted ratio (alpha - rho) / (1 - rho).
  double lambda_tilde_max = 0.0;
  double shifted_alpha = 0.0;
  // Whether lambda-tilde-max itself was non-increasing as rho decreased
  // across the probes. In practice it increases; the bisection only needs
  // rho * lambda-tilde-max to shrink with rho, and that is always checked.
  bool lambda_tilde_monotone = true;
  std::vector<RhoProbe> probes;

  std::vector<double> gamma_grid;
  std::vector<double> epsilon_grid;
  double a_tol = 0.0;
  double t_tol = 0.0;
};

BoundResult strong_bound(double alpha, double p,
                         const ExponentSearchConfig& cfg);
BoundResult weak_bound(double alpha, double p, const ExponentSearchConfig& cfg);

// Strong-recovery exponent at (rho, gamma): H(rho) ln 2 + net term +
// min_t (rho log E[e^{t|X|^p}] - t lambda_min (1 - gamma^p) / 2). Returns
// +inf when the inner minimum is attained at t = 0.
double strong_exponent(double rho, double gamma, double alpha, double p,
                       double lambda_min, const ExponentSearchConfig& cfg);

}  // namespace lprec

#endif  // LPREC_FINITE_HPP
