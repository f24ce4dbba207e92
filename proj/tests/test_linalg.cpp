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
#include <cstdio>
#include <filesystem>
#include <numeric>

#include "doctest.h"
#include "lprec/errors.hpp"
#include "lprec/io.hpp"
#include "lprec/linalg.hpp"

using namespace lprec;

TEST_CASE("gaussian sampling is deterministic and regression locked") {
  const Matrix A = sample_gaussian_matrix(2, 3, {42});
  Matrix expect(2, 3);
  expect << -1.5442254637540294, 0.04921369944568076, -0.18651529323028623,
      2.0672571934024098, 0.23688146022569476, -1.0581553946645452;
  CHECK(A == expect);
  CHECK(sample_gaussian_matrix(7, 9, {5}) == sample_gaussian_matrix(7, 9, {5}));
  CHECK(sample_gaussian_matrix(7, 9, {5}) != sample_gaussian_matrix(7, 9, {6}));
  CHECK_THROWS_AS(sample_gaussian_matrix(0, 3, {1}), DomainError);
}

TEST_CASE("gaussian sample moments") {
  const Matrix A = sample_gaussian_matrix(1000, 1000, {2024});
  const double mean = A.mean();
  const double var = (A.array() - mean).square().sum() / (A.size() - 1);
  CHECK(std::abs(mean) <= 0.005);
  CHECK(var >= 0.99);
  CHECK(var <= 1.01);
}

TEST_CASE("derived seeds and supports") {
  CHECK(derive_seed({1}, 2, 3).seed == derive_seed({1}, 2, 3).seed);
  CHECK(derive_seed({1}, 2, 3).seed != derive_seed({1}, 3, 2).seed);
  NormalStream rng({9});
  const auto s = sample_support(20, 5, rng);
  CHECK(s.size() == 5);
  CHECK(std::is_sorted(s.begin(), s.end()));
  CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
  CHECK(s.back() < 20);
  // Every index shows up with roughly equal frequency.
  std::vector<int> hits(10, 0);
  NormalStream r2({10});
  for (int t = 0; t < 20000; ++t)
    for (int i : sample_support(10, 3, r2)) ++hits[i];
  for (int h : hits) CHECK(std::abs(h - 6000) < 300);
}

TEST_CASE("null space of a coordinate matrix") {
  Matrix A(2, 3);
  A << 1, 0, 0, 0, 1, 0;
  const Matrix B = null_space_basis(A);
  REQUIRE(B.rows() == 3);
  REQUIRE(B.cols() == 1);
  CHECK(std::abs(B(2, 0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(B(0, 0)) <= 1e-15);
  CHECK(std::abs(B(1, 0)) <= 1e-15);
}

TEST_CASE("null space postconditions on random shapes") {
  NormalStream shapes({77});
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(shapes.below(63));
    const int m = 1 + static_cast<int>(shapes.below(static_cast<std::uint64_t>(n - 1)));
    const Matrix A = sample_gaussian_matrix(m, n, derive_seed({77}, trial));
    const Matrix B = null_space_basis(A);
    CHECK(B.rows() == n);
    CHECK(B.cols() == n - m);
    CHECK((A * B).cwiseAbs().maxCoeff() <= 1e-10 * A.cwiseAbs().maxCoeff() * n);
    CHECK((B.transpose() * B - Matrix::Identity(n - m, n - m)).cwiseAbs().maxCoeff() <= 1e-12);
  }
  const Matrix A = sample_gaussian_matrix(5, 8, {3});
  const Matrix B = null_space_basis(A);
  CHECK((A * B).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK((B.transpose() * B - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("null space of the orthogonal complement of one vector") {
  const int k = 3;
  Vector beta(6 * k);
  for (int i = 0; i < 6 * k; ++i) beta(i) = i < k ? 1.0 : (i < 2 * k ? -1.0 : 1.0 / 64);
  const Matrix A = null_space_basis(beta.transpose()).transpose();
  const Matrix B = null_space_basis(A);
  REQUIRE(B.cols() == 1);
  const Vector b = B.col(0) * (B(0, 0) > 0 ? 1.0 : -1.0);
  CHECK((b - beta / beta.norm()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("rank deficiency is reported") {
  Matrix A(2, 4);
  A << 1, 2, 3, 4, 2, 4, 6, 8;
  CHECK_THROWS_AS(null_space_basis(A), RankError);
  CHECK_THROWS_AS(null_space_basis(Matrix::Identity(3, 3)), RankError);
}

TEST_CASE("weighted minimum-norm solve") {
  // Orthonormal rows, unit weights: x = A^T y.
  const Matrix Q = null_space_basis(sample_gaussian_matrix(3, 7, {4})).transpose();
  const Vector y = Vector::LinSpaced(4, 1.0, 4.0);
  const Vector x = min_norm_weighted_solve(Q, y, Vector::Ones(7));
  CHECK((x - Q.transpose() * y).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(min_norm_weighted_solve(Q, Vector::Zero(4), Vector::Ones(7)).norm() == 0.0);

  // Normal-equations oracle on a seeded 4x8 instance.
  const Matrix A = sample_gaussian_matrix(4, 8, {11});
  NormalStream rng({12});
  Vector w(8);
  for (int i = 0; i < 8; ++i) w(i) = 0.1 + 5.0 * rng.uniform();
  const Vector b = sample_gaussian_matrix(4, 1, {13}).col(0);
  const Matrix Winv = w.cwiseInverse().asDiagonal();
  const Vector ref = Winv * A.transpose() * (A * Winv * A.transpose()).lu().solve(b);
  CHECK((min_norm_weighted_solve(A, b, w) - ref).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("weighted solve postconditions on random instances") {
  for (int trial = 0; trial < 200; ++trial) {
    const RngSeed s = derive_seed({500}, trial);
    NormalStream rng(s);
    const int n = 3 + static_cast<int>(rng.below(30));
    const int m = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
    const Matrix A = sample_gaussian_matrix(m, n, derive_seed(s, 1));
    const Vector y = sample_gaussian_matrix(m, 1, derive_seed(s, 2)).col(0);
    Vector w(n);
    for (int i = 0; i < n; ++i) w(i) = std::exp(6.0 * (rng.uniform() - 0.5));
    const Vector x = min_norm_weighted_solve(A, y, w);
    CHECK((A * x - y).norm() <= 1e-9 * std::max(1.0, y.norm()));
    const Matrix B = null_space_basis(A);
    CHECK((B.transpose() * w.cwiseProduct(x)).cwiseAbs().maxCoeff() <=
          1e-9 * std::max(1.0, w.cwiseProduct(x).norm()));
  }
}

TEST_CASE("weighted solve rejects bad input") {
  const Matrix A = sample_gaussian_matrix(2, 4, {1});
  CHECK_THROWS_AS(min_norm_weighted_solve(A, Vector::Ones(2), -Vector::Ones(4)), DomainError);
  CHECK_THROWS_AS(min_norm_weighted_solve(A, Vector::Ones(3), Vector::Ones(4)), DomainError);
  Matrix S(2, 4);
  S << 1, 1, 0, 0, 1, 1 + 1e-12, 0, 0;
  try {
    min_norm_weighted_solve(S, Vector::Ones(2), Vector::Ones(4));
    FAIL("expected ConditioningError");
  } catch (const ConditioningError& e) {
    CHECK(e.condition_estimate() > kMaxConditionEstimate);
  }
}

TEST_CASE("csv round trip and validation") {
  const Matrix A = sample_gaussian_matrix(3, 4, {8});
  CHECK(parse_matrix_csv(format_matrix_csv(A), "mem") == A);
  CHECK(parse_matrix_csv("1, 2\n\n3,4\r\n", "mem") == (Matrix(2, 2) << 1, 2, 3, 4).finished());
  CHECK(parse_vector_csv("1,2,3\n", "mem") == Vector::LinSpaced(3, 1, 3));
  CHECK(parse_vector_csv("1\n2\n3\n", "mem") == Vector::LinSpaced(3, 1, 3));
  try {
    parse_matrix_csv("1,2\n3,nan\n", "m.csv");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("m.csv:2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_matrix_csv("1,2\n3\n", "m"), ParseError);
  CHECK_THROWS_AS(parse_matrix_csv("1,inf\n", "m"), ParseError);
  CHECK_THROWS_AS(parse_matrix_csv("1,2x\n", "m"), ParseError);
  CHECK_THROWS_AS(parse_matrix_csv("\n\n", "m"), ParseError);
  CHECK_THROWS_AS(parse_vector_csv("1,2\n3,4\n", "m"), ParseError);
  CHECK_THROWS_AS(read_matrix_csv("/nonexistent/file.csv"), IoError);
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-1e-300) == "-1e-300");
}
