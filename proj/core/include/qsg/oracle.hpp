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

#include <vector>

#include "qsg/bath.hpp"
#include "qsg/model.hpp"
#include "qsg/renorm.hpp"

namespace qsg {

enum class DiscretizationScheme { Gauss, EqualWeight };

/// Finite set of modes with H_R = sum_k w_k b_k^* b_k and field
/// sum_k g_k (b_k + b_k^*)/sqrt(2).
struct BathDiscretization {
  std::vector<double> frequencies;
  std::vector<double> couplings;
  int fockCutoff = 4;  // levels per mode
  DiscretizationScheme scheme = DiscretizationScheme::Gauss;

  int modes() const { return static_cast<int>(frequencies.size()); }
  DiscreteModes measure() const;
  /// 2 pi over the smallest spacing between mode frequencies (infinite for
  /// a single mode).
  double recurrenceTime() const;
};

/// Nodes and weights for the zero-temperature radial weight
/// angularNorm r^{2n+1} e^{-2 r^m}, so that sum_k g_k^2 f(w_k) approximates
/// its integral against f. Gauss is exact for polynomials of degree 2N-1;
/// EqualWeight bins the weight into N cells of equal mass placed at their
/// centres of mass.
BathDiscretization discretizeBath(const FormFactor& ff, int modes,
                                  DiscretizationScheme scheme, int fockCutoff = 4);

/// Moments int r^k W(r) dr of the zero-temperature radial weight.
double radialMoment(const FormFactor& ff, int k);

struct OracleLimits {
  long dimLimit = 4096;
  double cutoffTol = 1e-6;  // allowed top-level population per mode
};

/// H_S ⊗ 1 + 1 ⊗ H_R + lambda V_S ⊗ field on the truncated Fock space, with
/// the system factor outermost.
class FiniteBathModel {
 public:
  FiniteBathModel(const SystemSpec& spec, BathDiscretization bath,
                  OracleLimits limits = {});

  long dim() const { return dim_; }
  long bathDim() const { return bathDim_; }
  const BathDiscretization& bath() const { return bath_; }
  const SystemSpec& system() const { return spec_; }
  Mat hamiltonian() const;
  bool isReal() const { return real_; }
  /// Truncated thermal state of the modes at the system's beta.
  RVec bathGibbsPopulations() const;
  /// Largest top-level population over modes in a state given on the
  /// product basis by its diagonal.
  double topPopulation(const RVec& diagonal) const;
  const OracleLimits& limits() const { return limits_; }

 private:
  SystemSpec spec_;
  BathDiscretization bath_;
  OracleLimits limits_;
  long dim_ = 0;
  long bathDim_ = 0;
  bool real_ = false;
};

struct OracleRun {
  std::vector<double> times;
  std::vector<Mat> reducedStates;
  Mat reducedGibbs;
  double recurrenceTime = 0.0;
  double topPopulation = 0.0;  // largest over initial and Gibbs states
  std::vector<double> convergence;  // deltas across refinements, if any
};

/// Exact reduced dynamics from rho0 ⊗ bath Gibbs state, through one dense
/// diagonalisation of the full Hamiltonian. Also fills the reduced Gibbs
/// state. Throws DimensionLimit and CutoffNonConvergence.
OracleRun exactReducedDynamics(const SystemSpec& spec, const BathDiscretization& bd,
                               const Mat& rho0, const std::vector<double>& times,
                               const OracleLimits& limits = {});

/// tr_R e^{-beta H}/Tr e^{-beta H}.
Mat exactReducedGibbs(const SystemSpec& spec, const BathDiscretization& bd,
                      const OracleLimits& limits = {});

/// Coherence factor tr(e^{-i H_+ t} rho_R e^{i H_- t}) for H_pm = H_R pm lambda
/// field, as a product of single truncated modes.
cplx dephasingFactor(const BathDiscretization& bd, double lambda, double beta,
                     double t);
/// The same factor without truncation, from the displaced-oscillator closed
/// form.
cplx dephasingFactorUntruncated(const BathDiscretization& bd, double lambda,
                                double beta, double t);

struct BoundFit {
  double prefactor = 0.0;   // C
  double decayRate = 0.0;   // gamma'
  double windowStart = 0.0;
  double windowEnd = 0.0;
  double residual = 0.0;    // rms of the log fit
  int points = 0;
  double supTau = 0.0;      // sup over the window of err_tau
  double lateSigma = 0.0;   // mean err_sigma over the last quarter of the window
  double lateTau = 0.0;     // mean err_tau over the same times
};

/// Fits log err(t) - log(1 + lambda^2 t) = log C - gamma' t on
/// [t_peak, recurrence/2]. Throws FitWindowEmpty with fewer than 3 usable
/// points.
BoundFit errorBoundFit(const std::vector<double>& times,
                       const std::vector<double>& errTau,
                       const std::vector<double>& errSigma, double lambda,
                       double recurrenceTime);

}  // namespace qsg
