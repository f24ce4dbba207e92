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

// Dense linear algebra and reproducible Gaussian sampling.

#ifndef LPREC_LINALG_HPP
#define LPREC_LINALG_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace lprec {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct RngSeed {
  std::uint64_t seed = 0;
};

// Mixes a seed with a tuple of indices into an independent child seed, so
// that per-trial streams do not depend on execution order.
RngSeed derive_seed(RngSeed base, std::uint64_t a, std::uint64_t b = 0,
                    std::uint64_t c = 0);

// Counter-based stream: the k-th uniform is splitmix64(seed, k), normals come
// from Box-Muller on consecutive uniform pairs. Identical seeds give
// identical sequences on every platform with IEEE doubles.
class NormalStream {
 public:
  explicit NormalStream(RngSeed seed) : seed_(seed.seed) {}

  double uniform();  // in (0, 1)
  double normal();
  std::uint64_t bits();
  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// m x n matrix of i.i.d. N(0, 1) entries, filled in row-major order.
Matrix sample_gaussian_matrix(int m, int n, RngSeed seed);

// k distinct indices drawn uniformly from [0, n), in ascending order.
std::vector<int> sample_support(int n, int k, NormalStream& rng);

// Orthonormal basis of the null space of A (n x (n - m)). Requires full row
// rank m < n; throws RankError otherwise.
Matrix null_space_basis(const Matrix& A);

// argmin sum_i w_i x_i^2 subject to A x = y, for positive weights w.
// Throws ConditioningError when A W^{-1} A^T is numerically singular.
Vector min_norm_weighted_solve(const Matrix& A, const Vector& y, const Vector& w);

// Largest acceptable condition estimate for min_norm_weighted_solve.
inline constexpr double kMaxConditionEstimate = 1e14;

}  // namespace lprec

#endif  // LPREC_LINALG_HPP
