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

// Limiting (undersampling ratio -> 1) recovery thresholds for Gaussian
// null spaces.

#ifndef LPREC_LIMIT_HPP
#define LPREC_LIMIT_HPP

#include "lprec/quadrature.hpp"

namespace lprec {

struct LimitThreshold {
  double p = 0.0;
  double z_star = 0.0;
  double rho_star = 0.0;    // 1 - F(z_star)
  double derivative = 0.0;  // d rho_star / dp
  int solver_iters = 0;
  double residual = 0.0;    // split-moment residual at z_star
};

struct SplitPoint {
  double z = 0.0;
  int iterations = 0;
  double residual = 0.0;
};

// Point z* where the lower and upper partial moments of |X|^p are equal,
//   int_0^z x^p f(x) dx = int_z^inf x^p f(x) dx.
// Requires 0 < p <= 1.
SplitPoint solve_z_star(double p, const QuadratureConfig& cfg = {});

// Lower and upper partial moments of |X|^p split at z.
double lower_partial_moment(double z, double p, const QuadratureConfig& cfg = {});
double upper_partial_moment(double z, double p, const QuadratureConfig& cfg = {});

LimitThreshold strong_limit_threshold(double p, const QuadratureConfig& cfg = {});

// Derivative of the strong limit threshold in p, from the implicit function
// theorem applied to the split-point equation.
double strong_threshold_derivative(double p, const QuadratureConfig& cfg = {});

// 2/3 for p in [0, 1), 1 for p = 1.
double weak_limit_threshold(double p);

// 1/2 for every p in [0, 1].
double sectional_limit_threshold(double p);

}  // namespace lprec

#endif  // LPREC_LIMIT_HPP
