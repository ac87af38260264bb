// Copyright 2026 The qsg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace qsg {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

/// Kronecker product with row-major pair indexing, (A⊗B)(i*dB+k, j*dB+l) = A(i,j)B(k,l).
Mat kron(const Mat& a, const Mat& b);

/// Row-major vectorisation: v(m*d+n) = M(m,n).
Vec vecRows(const Mat& m);
Mat unvecRows(const Vec& v, Eigen::Index d);

Mat hermitianPart(const Mat& a);
double hermitianDefect(const Mat& a);

/// Largest singular value (operator norm induced by the Euclidean norm).
double operatorNorm(const Mat& a);
/// Sum of singular values.
double traceNorm(const Mat& a);

/// Smallest eigenvalue of the Hermitian part.
double minHermitianEigenvalue(const Mat& a);

/// Square root and inverse square root of a positive definite Hermitian matrix.
Mat sqrtPositive(const Mat& a);

/// Dense matrix exponential (Padé approximation with scaling and squaring).
Mat expm(const Mat& a);

/// Least-squares slope of log(y) against log(x).
double logLogSlope(std::span<const double> x, std::span<const double> y);

/// Seeded source for the random Hermitian matrices and states used in
/// property checks. Values are reproducible for a fixed seed on a given
/// standard library.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  Mat matrix(Eigen::Index rows, Eigen::Index cols);
  /// GUE-like Hermitian matrix with entries of unit scale.
  Mat hermitian(Eigen::Index d);
  /// Full-rank random density matrix (Ginibre ensemble).
  Mat densityMatrix(Eigen::Index d);
  /// Random Hermitian matrix with a prescribed spectrum.
  Mat hermitianWithSpectrum(const RVec& spectrum);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace qsg
