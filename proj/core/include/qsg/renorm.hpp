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

#include <optional>
#include <vector>

#include "qsg/bath.hpp"
#include "qsg/lso.hpp"
#include "qsg/model.hpp"

namespace qsg {

/// A finite set of bath modes, used in place of the continuum weight when
/// cross-checking the expansion against exact diagonalisation.
struct DiscreteModes {
  std::vector<double> frequencies;
  std::vector<double> couplingsSquared;
};

/// Reduced coupled Gibbs state up to second order in the coupling:
/// rho = rho0 + lambda first + lambda^2 second + O(lambda^3), all in the
/// computational basis. `first` vanishes identically.
struct GibbsExpansion {
  Mat zeroth;
  Mat first;
  Mat second;
  /// Unnormalised correction M with rho proportional to e^{-beta H}(1 + lambda^2 M),
  /// in the eigenbasis.
  Mat correction;
};

GibbsExpansion gibbsExpansion(const SystemSpec& spec, const EigenSystem& eig,
                              const FlattenedFormFactor& fff,
                              const QuadratureTolerance& tol = {});
GibbsExpansion gibbsExpansion(const SystemSpec& spec, const EigenSystem& eig,
                              const DiscreteModes& modes);

struct PerturbativeOptions {
  double lambdaRadius = 0.5;
};

/// e^{-beta H}(1 + lambda^2 M) normalised to unit trace and made exactly
/// Hermitian. Throws InvalidArgument above the coupling radius and NotPositive
/// when the truncated state loses positivity.
Mat reducedGibbsPerturbative(const SystemSpec& spec, const EigenSystem& eig,
                             const GibbsExpansion& expansion,
                             const PerturbativeOptions& opts = {});
Mat reducedGibbsPerturbative(const SystemSpec& spec,
                             const FlattenedFormFactor& fff,
                             const CorrelationKernel& kernel,
                             const PerturbativeOptions& opts = {});

struct RenormalizedHamiltonian {
  double Ztilde = 0.0;
  Mat Htilde;          // computational basis
  EigenSystem eigen;   // ascending, minimum exactly 0
};

/// Ztilde = 1/||rho||, Htilde = -ln(Ztilde rho)/beta. Throws SingularState
/// if rho has an eigenvalue below 1e-14, DegenerateSpectrum for repeated
/// levels.
RenormalizedHamiltonian renormalizedHamiltonian(
    const Mat& rho, double beta, double degeneracyRelTol = kDefaultDegeneracyTol);

enum class StateSource { Perturbative2, Oracle };

struct RenormalizedSystem {
  StateSource source = StateSource::Perturbative2;
  double lambda = 0.0;
  Mat rho;  // computational basis
  double Ztilde = 0.0;
  Mat Htilde;  // computational basis
  /// Tilde eigendata, reordered and rephased so that vector n pairs with
  /// the original eigenvector n and <phi_n, phi~_n> > 0.
  EigenSystem eigen;
  /// Coordinates of the tilde eigenvectors in the original eigenbasis.
  Mat coefficients;
  DoubledOperator LStilde;  // original eigen-product coordinates
  Vec OmegaTilde;           // original eigen-product coordinates
  Mat rootTilde;            // matrix form of OmegaTilde
  LevelShift LambdaTilde;   // original eigen-product coordinates

  CyclicVector cyclic() const { return CyclicVector(rootTilde); }
};

/// Pairs each original eigenvector with the tilde vector of largest overlap
/// (greedy), returning the tilde index for every original index.
std::vector<Eigen::Index> pairEigenvectors(const Mat& original, const Mat& tilde);

/// L~ and Omega~ for tilde eigendata expressed in original eigenbasis
/// coordinates.
std::pair<DoubledOperator, Vec> renormalizedDoubledData(
    const RVec& energiesTilde, const Mat& coefficients, double beta);

/// Lambda~ from the same closed form with the tilde energies and the tilde
/// matrix elements of the unchanged coupling. The tilde Bohr partition must
/// reproduce the original one at tolerance max(10 shift, floor).
LevelShift renormalizedLevelShift(const RenormalizedSystem& partial,
                                  const SystemSpec& spec, const EigenSystem& eig,
                                  const CorrelationKernel& kernel,
                                  A1Policy policy = A1Policy::Strict);

RenormalizedSystem renormalize(const SystemSpec& spec, const EigenSystem& eig,
                               const Mat& rho, const CorrelationKernel& kernel,
                               StateSource source = StateSource::Perturbative2,
                               A1Policy policy = A1Policy::Strict);

/// Distances between original and renormalised data used by the scaling
/// studies.
struct RenormalizationShift {
  double hamiltonian = 0.0;    // ||Htilde - (H_S - E_min)||
  double eigenvectors = 0.0;   // max_n ||phi_n - phi~_n||
  double levelShift = 0.0;     // ||Lambda - Lambda~||
  double eigenvalues = 0.0;    // max matched |lambda - lambda~|
  double projections = 0.0;    // max matched ||Q - Q~||
  double kernelResidual = 0.0; // ||Lambda~ Omega~|| / ||Lambda~||
};

RenormalizationShift renormalizationShift(const SystemSpec& spec,
                                          const EigenSystem& eig,
                                          const LevelShift& lambda,
                                          const RenormalizedSystem& rs);

}  // namespace qsg
