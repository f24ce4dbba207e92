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

// Null-space conditions for strong, weak and sectional recovery.
//
// Every condition compares two sums over the entries of B z, where the
// columns of B span the null space of the measurement matrix. A condition
// holds for a matrix when it holds for every nonzero z. With a single null
// direction that reduces to z = +1 and z = -1; otherwise certify() runs a
// falsification search and can only report "not falsified within budget".
//
// Index sets are 0-based.

#ifndef LPREC_CONDITIONS_HPP
#define LPREC_CONDITIONS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lprec/linalg.hpp"

namespace lprec {

enum class ConditionMode { kStrong, kWeakL1, kWeakLp, kWeakL0, kSectional };

std::string_view to_string(ConditionMode mode);
// Accepts strong, weak_l1, weak_lp, weak_l0, sectional. Throws ParseError.
ConditionMode parse_condition_mode(std::string_view name);

struct SupportPattern {
  std::vector<int> support;  // ascending, distinct
  std::vector<int> signs;    // +1 or -1 per support entry

  // All signs +1.
  static SupportPattern nonnegative(std::vector<int> support);
  // Throws DomainError on unsorted or out-of-range indices or bad signs.
  void validate(int n) const;
};

struct SignPartition {
  std::vector<int> negative;  // i in T with sign(B_i z) * sigma_i < 0
  std::vector<int> positive;  // the rest of T, including B_i z = 0
};

// Entries with |B_i z| <= 1e-12 |z| |B_i| count as zero.
SignPartition partition_support(const Matrix& B, const Vector& z,
                                const SupportPattern& pattern);

struct ConditionSides {
  double lhs = 0.0;
  double rhs = 0.0;
};

// lhs is the sum of the rho_n largest |B_i z|^p, rhs the sum of the others.
// The condition at z is lhs < rhs. p = 0 counts nonzeros.
ConditionSides strong_condition_holds_for(const Matrix& B, const Vector& z,
                                          double p, int rho_n);

struct WeakCheck {
  bool holds = false;
  bool strict = true;  // whether lhs < rhs (rather than <=) was required
  double lhs = 0.0;
  double rhs = 0.0;
};

// p = 1: ||B_{T-} z||_1 < ||B_{T^c} z||_1 + ||B_{T+} z||_1.
// 0 < p < 1: ||B_{T-} z||_p^p <= ||B_{T^c} z||_p^p, strict when B_{T+} z = 0.
// p = 0: ||B_{T-} z||_0 < ||B_{T^c} z||_0.
WeakCheck weak_condition_holds_for(const Matrix& B, const Vector& z, double p,
                                   const SupportPattern& pattern);

// (||B_T z||_p^p, ||B_{T^c} z||_p^p); the condition is lhs < rhs.
ConditionSides sectional_condition_holds_for(const Matrix& B, const Vector& z,
                                             double p,
                                             const std::vector<int>& support);

// Strict comparison used by all conditions: rhs - lhs must exceed
// 1e-12 max(1, lhs + rhs), so exact ties count as violations.
bool strictly_less(double lhs, double rhs);

struct SearchBudget {
  int sphere_samples = 2000;
  int refine_steps = 200;
  double step_shrink = 0.5;
  RngSeed seed{0};

  void validate() const;
};

struct ConditionQuery {
  ConditionMode mode = ConditionMode::kStrong;
  double p = 1.0;
  int rho_n = 0;           // strong mode
  SupportPattern pattern;  // weak modes; sectional uses only the support

  // Checks p against the mode (weak_l1 needs p = 1, weak_l0 p = 0, weak_lp
  // 0 < p < 1) and the support or rho_n against n.
  void validate(int n) const;
};

struct Witness {
  Vector z;
  std::vector<int> support;  // T of the violated inequality
  double lhs = 0.0;
  double rhs = 0.0;
};

struct ConditionVerdict {
  ConditionMode mode = ConditionMode::kStrong;
  bool holds = false;
  bool certificate_exact = false;
  std::optional<Witness> witness;
  double best_margin = 0.0;  // smallest rhs - lhs seen, z on the unit sphere
  int evaluations = 0;
};

// Evaluates the query's condition at a single z.
WeakCheck evaluate_condition(const Matrix& B, const Vector& z,
                             const ConditionQuery& query);

ConditionVerdict certify(const Matrix& B, const ConditionQuery& query,
                         const SearchBudget& budget = {});

// Re-evaluates a witness from (z, T) and the query's signs only; true when
// the witness violates its inequality.
bool witness_violates(const Matrix& B, const ConditionQuery& query,
                      const Witness& witness);

}  // namespace lprec

#endif  // LPREC_CONDITIONS_HPP
