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

#include "lprec/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lprec/errors.hpp"

namespace lprec {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

RngSeed derive_seed(RngSeed base, std::uint64_t a, std::uint64_t b,
                    std::uint64_t c) {
  std::uint64_t h = splitmix64(base.seed);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ (b + 0x632BE59BD9B4E019ull));
  h = splitmix64(h ^ (c + 0x8CB92BA72F3D8DD7ull));
  return {h};
}

std::uint64_t NormalStream::bits() {
  return splitmix64(seed_ ^ splitmix64(counter_++));
}

double NormalStream::uniform() {
  // 53 random bits, shifted by half an ulp so 0 is never returned.
  return (static_cast<double>(bits() >> 11) + 0.5) * 0x1.0p-53;
}

double NormalStream::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

std::uint64_t NormalStream::below(std::uint64_t n) {
  // Rejection keeps the draw exactly uniform.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x = bits();
  while (x >= limit) x = bits();
  return x % n;
}

Matrix sample_gaussian_matrix(int m, int n, RngSeed seed) {
  if (m < 1 || n < 1) {
    std::ostringstream msg;
    msg << "sample_gaussian_matrix: dimensions must be positive, got " << m
        << "x" << n;
    throw DomainError(msg.str());
  }
  NormalStream rng(seed);
  Matrix A(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = rng.normal();
  return A;
}

std::vector<int> sample_support(int n, int k, NormalStream& rng) {
  if (k < 0 || k > n) {
    std::ostringstream msg;
    msg << "sample_support: cannot draw " << k << " indices from " << n;
    throw DomainError(msg.str());
  }
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  for (int i = 0; i < k; ++i) {
    const int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

Matrix null_space_basis(const Matrix& A) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  if (m < 1 || m >= n) {
    std::ostringstream msg;
    msg << "null_space_basis: need 1 <= rows < cols, got " << m << "x" << n;
    throw RankError(msg.str());
  }
  if (!A.allFinite()) throw DomainError("null_space_basis: non-finite entry");
  Eigen::ColPivHouseholderQR<Matrix> qr(A.transpose());
  const auto& R = qr.matrixR();
  const double largest = std::abs(R(0, 0));
  const double smallest = std::abs(R(m - 1, m - 1));
  if (!(largest > 0.0) || smallest < 1e-10 * largest) {
    std::ostringstream msg;
    msg << "null_space_basis: matrix is numerically rank deficient (pivot "
           "ratio "
        << (largest > 0.0 ? smallest / largest : 0.0) << ")";
    throw RankError(msg.str());
  }
  const Matrix Q = qr.householderQ();
  return Q.rightCols(n - m);
}

Vector min_norm_weighted_solve(const Matrix& A, const Vector& y, const Vector& w) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  if (y.size() != m || w.size() != n) {
    std::ostringstream msg;
    msg << "min_norm_weighted_solve: shape mismatch (A " << m << "x" << n
        << ", y " << y.size() << ", w " << w.size() << ")";
    throw DomainError(msg.str());
  }
  if (m > n) throw RankError("min_norm_weighted_solve: more rows than columns");
  for (Eigen::Index i = 0; i < n; ++i)
    if (!(w(i) > 0.0) || !std::isfinite(w(i)))
      throw DomainError("min_norm_weighted_solve: weights must be positive and finite");
  // With D = W^{-1/2} and M = (A D)^T = Q R P^T, the minimizer is
  // x = D Q R^{-T} P^T y.
  const Vector d = w.cwiseInverse().cwiseSqrt();
  const Matrix M = (A * d.asDiagonal()).transpose();
  Eigen::ColPivHouseholderQR<Matrix> qr(M);
  const Matrix R = qr.matrixR().topLeftCorner(m, m).triangularView<Eigen::Upper>();
  double rmax = 0.0;
  double rmin = INFINITY;
  for (Eigen::Index i = 0; i < m; ++i) {
    rmax = std::max(rmax, std::abs(R(i, i)));
    rmin = std::min(rmin, std::abs(R(i, i)));
  }
  const double cond = rmin > 0.0 ? (rmax / rmin) * (rmax / rmin) : INFINITY;
  if (!(cond <= kMaxConditionEstimate)) {
    std::ostringstream msg;
    msg << "min_norm_weighted_solve: A W^-1 A^T is ill-conditioned (estimate "
        << cond << ")";
    throw ConditioningError(msg.str(), cond);
  }
  const Vector py = qr.colsPermutation().transpose() * y;
  const Vector v = R.transpose().triangularView<Eigen::Lower>().solve(py);
  Vector u = Vector::Zero(n);
  u.head(m) = v;
  u = qr.householderQ() * u;
  return d.cwiseProduct(u);
}

}  // namespace lprec
