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

#include "qsg/model.hpp"

#include <cmath>
#include <string>

#include "qsg/error.hpp"

namespace qsg {

namespace {

void checkHermitian(const Mat& m, const char* name) {
  const double scale = std::max(m.norm(), 1.0);
  if (hermitianDefect(m) > 1e-12 * scale) {
    throw Error(Errc::NonHermitian, std::string(name) + " is not Hermitian");
  }
}

}  // namespace

void validate(const SystemSpec& spec) {
  const auto d = spec.dim();
  if (d < 2 || spec.hamiltonian.cols() != d) {
    throw Error(Errc::InvalidArgument, "H_S must be square with d >= 2");
  }
  if (spec.coupling.rows() != d || spec.coupling.cols() != d) {
    throw Error(Errc::InvalidArgument, "V_S must match the dimension of H_S");
  }
  if (!(spec.beta > 0.0) || !std::isfinite(spec.beta)) {
    throw Error(Errc::InvalidArgument, "beta must be positive");
  }
  if (!std::isfinite(spec.lambda)) {
    throw Error(Errc::InvalidArgument, "lambda must be finite");
  }
  checkHermitian(spec.hamiltonian, "H_S");
  checkHermitian(spec.coupling, "V_S");
}

EigenSystem eigendecompose(const Mat& h, double degeneracyRelTol) {
  checkHermitian(h, "Hamiltonian");
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitianPart(h));
  if (es.info() != Eigen::Success) {
    throw Error(Errc::InvalidArgument, "eigensolver did not converge");
  }
  EigenSystem out{es.eigenvalues(), es.eigenvectors()};
  const auto d = out.dim();
  for (Eigen::Index j = 0; j < d; ++j) {
    Eigen::Index arg = 0;
    out.vectors.col(j).cwiseAbs().maxCoeff(&arg);
    const cplx c = out.vectors(arg, j);
    out.vectors.col(j) *= std::conj(c) / std::abs(c);
  }
  const double scale = std::max(operatorNorm(h), 1e-300);
  for (Eigen::Index j = 1; j < d; ++j) {
    if (out.energies(j) - out.energies(j - 1) <= degeneracyRelTol * scale) {
      throw Error(Errc::DegenerateSpectrum,
                  "levels " + std::to_string(j - 1) + " and " +
                      std::to_string(j) + " are within tolerance");
    }
  }
  return out;
}

EigenSystem eigendecompose(const SystemSpec& spec, double degeneracyRelTol) {
  validate(spec);
  return eigendecompose(spec.hamiltonian, degeneracyRelTol);
}

DoubledOperator buildLiouvillian(const EigenSystem& eig) {
  const auto d = eig.dim();
  DoubledOperator out{d, Mat::Zero(d * d, d * d)};
  for (Eigen::Index m = 0; m < d; ++m) {
    for (Eigen::Index n = 0; n < d; ++n) {
      const auto k = pairIndex(m, n, d);
      out.matrix(k, k) = eig.energies(m) - eig.energies(n);
    }
  }
  return out;
}

GibbsVector gibbsVector(const EigenSystem& eig, double beta) {
  if (!(beta > 0.0)) throw Error(Errc::InvalidArgument, "beta must be positive");
  const auto d = eig.dim();
  const double emin = eig.energies.minCoeff();
  const double spread = eig.energies.maxCoeff() - emin;
  if (beta * spread > 700.0) {
    throw Error(Errc::Overflow, "beta * (E_max - E_min) exceeds 700");
  }
  GibbsVector out;
  out.weights.resize(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    out.weights(j) = std::exp(-beta * (eig.energies(j) - emin));
  }
  const double shifted = out.weights.sum();
  out.weights /= shifted;
  out.logPartition = std::log(shifted) - beta * emin;
  out.partition = std::exp(out.logPartition);
  out.coefficients = Vec::Zero(d * d);
  for (Eigen::Index j = 0; j < d; ++j) {
    out.coefficients(pairIndex(j, j, d)) = std::sqrt(out.weights(j));
  }
  return out;
}

CyclicVector::CyclicVector(Mat root) : root_(std::move(root)) {
  Eigen::FullPivLU<Mat> lu(root_);
  if (!lu.isInvertible()) {
    throw Error(Errc::SingularWeights, "reference vector is not separating");
  }
  rootInverse_ = lu.inverse();
}

CyclicVector CyclicVector::fromGibbs(const GibbsVector& omega) {
  if (omega.weights.minCoeff() < 1e-300) {
    throw Error(Errc::SingularWeights, "Gibbs weight below 1e-300");
  }
  return CyclicVector(omega.weights.cwiseSqrt().cast<cplx>().asDiagonal());
}

Mat CyclicVector::vecMatrix() const {
  // vec(X R) = (1 ⊗ R^T) vec(X)
  return kron(Mat::Identity(dim(), dim()), root_.transpose());
}

Mat CyclicVector::devecMatrix() const {
  return kron(Mat::Identity(dim(), dim()), rootInverse_.transpose());
}

Vec vecCyclic(const Mat& xEigen, const GibbsVector& omega) {
  return CyclicVector::fromGibbs(omega).vec(xEigen);
}

Mat devecCyclic(const Vec& v, const GibbsVector& omega) {
  return CyclicVector::fromGibbs(omega).devec(v);
}

Vec modularConjugation(const Vec& v) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(v.size())));
  if (d * d != v.size()) {
    throw Error(Errc::InvalidArgument, "vector is not on a doubled space");
  }
  return vecRows(unvecRows(v, d).adjoint());
}

}  // namespace qsg
