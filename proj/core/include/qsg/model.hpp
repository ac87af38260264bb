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

#include "qsg/linalg.hpp"

namespace qsg {

/// Microscopic system data. Both matrices are given in the same fixed
/// ("computational") basis of C^d.
struct SystemSpec {
  Mat hamiltonian;  // H_S
  Mat coupling;     // V_S
  double beta = 1.0;
  double lambda = 0.0;

  Eigen::Index dim() const { return hamiltonian.rows(); }
};

inline constexpr double kDefaultDegeneracyTol = 1e-8;

/// Throws NonHermitian / InvalidArgument for malformed input.
void validate(const SystemSpec& spec);

/// Eigendata of a Hermitian matrix. Columns of `vectors` are the
/// eigenvectors in the computational basis, energies ascending. Each
/// eigenvector is normalised so that its largest-modulus component is
/// real and positive.
struct EigenSystem {
  RVec energies;
  Mat vectors;

  Eigen::Index dim() const { return energies.size(); }
  Mat toEigenbasis(const Mat& x) const {
    return vectors.adjoint() * x * vectors;
  }
  Mat fromEigenbasis(const Mat& x) const {
    return vectors * x * vectors.adjoint();
  }
};

/// Rejects spectra whose minimal level spacing is below
/// `degeneracyRelTol * ||h||`.
EigenSystem eigendecompose(const Mat& h,
                           double degeneracyRelTol = kDefaultDegeneracyTol);
EigenSystem eigendecompose(const SystemSpec& spec,
                           double degeneracyRelTol = kDefaultDegeneracyTol);

/// Product-basis index of phi_m ⊗ phi_n. Shared by every module.
constexpr Eigen::Index pairIndex(Eigen::Index m, Eigen::Index n,
                                 Eigen::Index d) {
  return m * d + n;
}

/// An operator on the doubled space C^d ⊗ C^d in product coordinates.
struct DoubledOperator {
  Eigen::Index d = 0;
  Mat matrix;
};

/// L_S = H_S ⊗ 1 - 1 ⊗ H_S in the eigen-product basis (diagonal).
DoubledOperator buildLiouvillian(const EigenSystem& eig);

struct GibbsVector {
  Vec coefficients;  // Z^{-1/2} e^{-beta E_j / 2} on (j,j)
  RVec weights;      // e^{-beta E_j} / Z
  double partition = 0.0;
  double logPartition = 0.0;
};

/// Throws Overflow when beta * (E_max - E_min) > 700.
GibbsVector gibbsVector(const EigenSystem& eig, double beta);

/// A cyclic and separating reference vector Omega, stored through its
/// matrix form R (Omega(m*d+n) = R(m,n)). Then (X ⊗ 1)Omega corresponds to
/// the matrix X R, so vectorisation is invertible whenever R is.
class CyclicVector {
 public:
  explicit CyclicVector(Mat root);
  static CyclicVector fromGibbs(const GibbsVector& omega);

  Eigen::Index dim() const { return root_.rows(); }
  const Mat& root() const { return root_; }
  Vec vector() const { return vecRows(root_); }

  /// (X ⊗ 1) Omega for X given in the frame's basis.
  Vec vec(const Mat& x) const { return vecRows(x * root_); }
  Mat devec(const Vec& v) const {
    return unvecRows(v, dim()) * rootInverse_;
  }

  /// The linear maps X -> vec(X) and back as d^2 x d^2 matrices acting on
  /// row-major vec(X).
  Mat vecMatrix() const;
  Mat devecMatrix() const;

 private:
  Mat root_;
  Mat rootInverse_;
};

/// (X ⊗ 1) Omega_{S,beta} for X in the eigenbasis. Throws SingularWeights
/// if a Gibbs weight is below 1e-300.
Vec vecCyclic(const Mat& xEigen, const GibbsVector& omega);
Mat devecCyclic(const Vec& v, const GibbsVector& omega);

/// J_S(chi ⊗ psi) = C psi ⊗ C chi with C the complex conjugation of
/// eigenbasis coordinates. On matrix forms this is M -> M^dagger.
Vec modularConjugation(const Vec& v);

}  // namespace qsg
