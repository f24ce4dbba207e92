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

#include <cmath>
#include <bit>
#include <random>

#include "doctest.h"
#include "lprec/conditions.hpp"
#include "lprec/errors.hpp"
#include "lprec/solvers.hpp"

using namespace lprec;

namespace {

Matrix beta_column(int k) {
  Matrix b(6 * k, 1);
  b.topRows(k).setConstant(1.0);
  b.middleRows(k, k).setConstant(-1.0);
  b.bottomRows(4 * k).setConstant(1.0 / 64.0);
  return b;
}

std::vector<int> range(int lo, int hi) {
  std::vector<int> r;
  for (int i = lo; i < hi; ++i) r.push_back(i);
  return r;
}

int max_strong_sparsity(const Matrix& B, double p) {
  int best = 0;
  for (int s = 1; s <= B.rows(); ++s) {
    ConditionQuery q{ConditionMode::kStrong, p, s, {}};
    if (!certify(B, q).holds) break;
    best = s;
  }
  return best;
}

Matrix row_vector(std::initializer_list<double> vals) {
  Matrix B(vals.size(), 1);
  int i = 0;
  for (double v : vals) B(i++, 0) = v;
  return B;
}

}  // namespace

TEST_CASE("partition follows signs and puts zeros in the agreeing set") {
  const int k = 3;
  const Matrix B = beta_column(k);
  const auto pat = SupportPattern::nonnegative(range(0, 2 * k));
  const Vector plus = Vector::Ones(1);
  auto part = partition_support(B, plus, pat);
  CHECK(part.negative == range(k, 2 * k));
  CHECK(part.positive == range(0, k));
  part = partition_support(B, -plus, pat);
  CHECK(part.negative == range(0, k));

  Matrix Z = Matrix::Zero(4, 2);
  Z(3, 0) = 1.0;
  Vector z(2);
  z << 0.0, 1.0;
  part = partition_support(Z, z, SupportPattern::nonnegative({0, 1}));
  CHECK(part.negative.empty());
  CHECK(part.positive == std::vector<int>{0, 1});
}

TEST_CASE("strong condition on the example null vector") {
  for (int k = 2; k <= 16; ++k) {
    const Matrix B = beta_column(k);
    const Vector z = Vector::Ones(1);
    const auto s1 = strong_condition_holds_for(B, z, 1.0, 2 * k);
    CHECK(s1.lhs + s1.rhs == doctest::Approx(33.0 * k / 16.0).epsilon(1e-13));
    const auto s5 = strong_condition_holds_for(B, z, 0.5, 2 * k);
    CHECK(s5.lhs + s5.rhs == doctest::Approx(2.5 * k).epsilon(1e-13));
    CHECK(max_strong_sparsity(B, 1.0) == (33 * k + 31) / 32 - 1);
    CHECK(max_strong_sparsity(B, 0.5) == (5 * k + 3) / 4 - 1);
  }
}

TEST_CASE("strong condition with equal magnitudes") {
  const Matrix B = Matrix::Constant(8, 1, -2.0);
  for (int s = 0; s <= 8; ++s) {
    const auto sides = strong_condition_holds_for(B, Vector::Ones(1), 0.5, s);
    CHECK(strictly_less(sides.lhs, sides.rhs) == (s < 4));
  }
}

TEST_CASE("weak conditions on the example") {
  for (int k = 2; k <= 16; ++k) {
    const Matrix B = beta_column(k);
    const auto pat = SupportPattern::nonnegative(range(0, 2 * k));
    const auto lp = weak_condition_holds_for(B, Vector::Ones(1), 0.5, pat);
    CHECK(lp.lhs == doctest::Approx(k));
    CHECK(lp.rhs == doctest::Approx(k / 2.0));
    CHECK_FALSE(lp.holds);
    CHECK_FALSE(lp.strict);
    const auto l1 = weak_condition_holds_for(B, Vector::Ones(1), 1.0, pat);
    CHECK(l1.lhs == doctest::Approx(k));
    CHECK(l1.rhs == doctest::Approx(17.0 * k / 16.0));  // 4k/64 + k
    CHECK(l1.holds);

    ConditionQuery q1{ConditionMode::kWeakL1, 1.0, 0, pat};
    const auto v1 = certify(B, q1);
    CHECK(v1.holds);
    CHECK(v1.certificate_exact);

    ConditionQuery q5{ConditionMode::kWeakLp, 0.5, 0, pat};
    const auto v5 = certify(B, q5);
    CHECK_FALSE(v5.holds);
    CHECK(v5.certificate_exact);
    REQUIRE(v5.witness);
    CHECK(v5.witness->z(0) == 1.0);
    CHECK(witness_violates(B, q5, *v5.witness));
  }
}

TEST_CASE("weak lp uses the strict branch when the agreeing part vanishes") {
  // T = {0, 1}; B_1 z = 0 on the support, B_0 z < 0.
  Matrix B(4, 1);
  B << -1.0, 0.0, 0.5, 0.5;
  const auto pat = SupportPattern::nonnegative({0, 1});
  const auto c = weak_condition_holds_for(B, Vector::Ones(1), 0.5, pat);
  CHECK(c.strict);
  CHECK(c.lhs == doctest::Approx(1.0));
  CHECK(c.rhs == doctest::Approx(2.0 * std::sqrt(0.5)));
  CHECK(c.holds);
  Matrix tie(3, 1);
  tie << -1.0, 0.0, 1.0;
  CHECK_FALSE(weak_condition_holds_for(tie, Vector::Ones(1), 0.5, pat).holds);
  tie(1, 0) = 0.3;
  CHECK(weak_condition_holds_for(tie, Vector::Ones(1), 0.5, pat).holds);
}

TEST_CASE("weak l0 counts nonzeros") {
  Matrix B(5, 1);
  B << -1.0, -2.0, 3.0, 0.0, 4.0;
  const auto pat = SupportPattern::nonnegative({0, 1, 2});
  const auto c = weak_condition_holds_for(B, Vector::Ones(1), 0.0, pat);
  CHECK(c.lhs == 2.0);
  CHECK(c.rhs == 1.0);
  CHECK_FALSE(c.holds);
  const auto flipped = weak_condition_holds_for(B, -Vector::Ones(1), 0.0, pat);
  CHECK(flipped.lhs == 1.0);
  CHECK_FALSE(flipped.holds);
}

TEST_CASE("sectional counterexamples") {
  const Matrix B = row_vector({16, 16, 1, 36});
  const std::vector<int> T{0, 1};
  auto s = sectional_condition_holds_for(B, Vector::Ones(1), 1.0, T);
  CHECK(s.lhs == 32.0);
  CHECK(s.rhs == 37.0);
  s = sectional_condition_holds_for(B, Vector::Ones(1), 0.5, T);
  CHECK(s.lhs == 8.0);
  CHECK(s.rhs == 7.0);
  ConditionQuery q{ConditionMode::kSectional, 0.5, 0, SupportPattern::nonnegative(T)};
  auto v = certify(B, q);
  CHECK_FALSE(v.holds);
  CHECK(witness_violates(B, q, *v.witness));
  q.p = 1.0;
  CHECK(certify(B, q).holds);

  const Matrix C = row_vector({1, 4, 1, 9});
  s = sectional_condition_holds_for(C, Vector::Ones(1), 0.5, T);
  CHECK(s.lhs == 3.0);
  CHECK(s.rhs == 4.0);
  CHECK(certify(C, q).holds);
  q.p = 0.5;
  CHECK(certify(C, q).holds);
}

TEST_CASE("strong sides equal the maximum over explicit supports") {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 6 + trial % 5;
    Matrix B(n, 3);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < 3; ++j) B(i, j) = nd(gen);
    Vector z(3);
    for (int j = 0; j < 3; ++j) z(j) = nd(gen);
    const double p = trial % 2 ? 0.5 : 1.0;
    for (int s = 1; s <= n; ++s) {
      double best = -1.0;
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) > s) continue;
        std::vector<int> T;
        for (int i = 0; i < n; ++i)
          if (mask & (1u << i)) T.push_back(i);
        best = std::max(best, sectional_condition_holds_for(B, z, p, T).lhs);
      }
      CHECK(strong_condition_holds_for(B, z, p, s).lhs ==
            doctest::Approx(best).epsilon(1e-12));
    }
  }
}

TEST_CASE("verdicts are scale invariant and strong margins shrink with rho") {
  std::mt19937_64 gen(9);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ud(0.01, 100.0);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix B(12, 3);
    for (int i = 0; i < 12; ++i)
      for (int j = 0; j < 3; ++j) B(i, j) = nd(gen);
    Vector z(3);
    for (int j = 0; j < 3; ++j) z(j) = nd(gen);
    const double c = ud(gen);
    SupportPattern pat;
    for (int i = 0; i < 12; i += 2) {
      pat.support.push_back(i);
      pat.signs.push_back(i % 4 ? 1 : -1);
    }
    for (auto [mode, p] : {std::pair{ConditionMode::kWeakL1, 1.0},
                          {ConditionMode::kWeakLp, 0.5},
                          {ConditionMode::kWeakL0, 0.0},
                          {ConditionMode::kSectional, 0.3},
                          {ConditionMode::kStrong, 0.7}}) {
      ConditionQuery q{mode, p, 4, pat};
      CHECK(evaluate_condition(B, z, q).holds ==
            evaluate_condition(B, c * z, q).holds);
    }
    double prev = INFINITY;
    for (int s = 0; s <= 12; ++s) {
      const auto sides = strong_condition_holds_for(B, z, 0.5, s);
      CHECK(sides.rhs - sides.lhs <= prev + 1e-12);
      prev = sides.rhs - sides.lhs;
    }
  }
}

TEST_CASE("search falsifies weak lp above two thirds") {
  int falsified = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix B = sample_gaussian_matrix(300, 6, derive_seed(RngSeed{31}, trial));
    ConditionQuery q{ConditionMode::kWeakLp, 0.5, 0,
                     SupportPattern::nonnegative(range(0, 240))};
    SearchBudget budget;
    budget.seed = derive_seed(RngSeed{32}, trial);
    const auto v = certify(B, q, budget);
    CHECK_FALSE(v.certificate_exact);
    if (!v.holds) {
      ++falsified;
      CHECK(witness_violates(B, q, *v.witness));
    }
  }
  CHECK(falsified >= 90);
}

TEST_CASE("exact strong certificate implies l1 recovery") {
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 10;
    const Matrix B = sample_gaussian_matrix(n, 1, derive_seed(RngSeed{50}, trial));
    const int s = max_strong_sparsity(B, 1.0);
    if (s == 0) continue;
    Eigen::HouseholderQR<Matrix> qr(B);
    const Matrix Q = qr.householderQ();
    const Matrix A = Q.rightCols(n - 1).transpose();
    NormalStream rng(derive_seed(RngSeed{51}, trial));
    for (int rep = 0; rep < 100; ++rep) {
      Vector x = Vector::Zero(n);
      for (int i : sample_support(n, s, rng)) x(i) = rng.normal();
      RecoveryInstance inst;
      inst.A = A;
      inst.y = A * x;
      inst.x_true = x;
      CHECK(solve_l1(inst).recovered.value());
    }
  }
}

TEST_CASE("query validation") {
  const Matrix B = Matrix::Ones(5, 1);
  CHECK_THROWS_AS(certify(B, {ConditionMode::kWeakL1, 0.5, 0, {}}), DomainError);
  CHECK_THROWS_AS(certify(B, {ConditionMode::kWeakL0, 0.5, 0, {}}), DomainError);
  CHECK_THROWS_AS(certify(B, {ConditionMode::kStrong, 1.0, 9, {}}), DomainError);
  SupportPattern bad{{3, 1}, {1, 1}};
  CHECK_THROWS_AS(certify(B, {ConditionMode::kWeakLp, 0.5, 0, bad}), DomainError);
  CHECK_THROWS_AS(parse_condition_mode("weak"), ParseError);
  CHECK(parse_condition_mode("weak_lp") == ConditionMode::kWeakLp);
}
