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
#include <string>
#include <utility>
#include <vector>

#include "qsg/bath.hpp"
#include "qsg/model.hpp"

namespace qsg {

using IndexPair = std::pair<Eigen::Index, Eigen::Index>;

/// The index pairs (m,n) sharing one Bohr frequency E_m - E_n.
struct BohrBlock {
  double frequency = 0.0;
  std::vector<IndexPair> pairs;
  bool accidental = false;  // e != 0 reached by more than one pair
};

struct BohrPartition {
  Eigen::Index d = 0;
  std::vector<BohrBlock> blocks;  // ascending frequency
  double tolerance = 0.0;

  bool hasAccidental() const;
  /// Index of the block holding the diagonal pairs.
  std::size_t zeroBlock() const;
};

/// Clusters the d^2 differences of `energies` with absolute tolerance
/// `tol`. Throws AmbiguousClustering if two distinct clusters lie closer
/// than 10 tol.
BohrPartition bohrProjections(const RVec& energies, double tol);
BohrPartition bohrProjections(const EigenSystem& eig,
                              double degeneracyRelTol = kDefaultDegeneracyTol);

/// Level shift block on the pairs of `block`, in the product basis of the
/// eigenbasis whose energies are `energies`. `coupling` holds the matrix
/// elements <psi_k, V psi_m> in that same basis.
Mat levelShiftBlock(const BohrBlock& block, const RVec& energies,
                    const Mat& coupling, const CorrelationKernel& kernel);
Mat levelShiftBlock(double e, const SystemSpec& spec, const EigenSystem& eig,
                    const CorrelationKernel& kernel);

struct OracleMesh {
  double eps = 0.1;
  int mesh = 800;
  double radius = 0.0;  // 0 selects defaultOracleRadius
};

/// Frequency radius outside of which the weight is below 1e-9 of the angular
/// norm; the oracle's uniform mesh covers [-radius, radius].
double defaultOracleRadius(const FlattenedFormFactor& fff);

/// Independent evaluation of a block: the reservoir is replaced by a
/// uniform midpoint mesh of one-boson states and i0 by i eps, and the block
/// is assembled as -B^dagger (L_0 - e + i eps)^{-1} B.
Mat discretizedLevelShiftOracle(const BohrBlock& block, const RVec& energies,
                                const Mat& coupling,
                                const FlattenedFormFactor& fff,
                                const OracleMesh& mesh);
Mat discretizedLevelShiftOracle(double e, const SystemSpec& spec,
                                const EigenSystem& eig,
                                const FlattenedFormFactor& fff, double eps,
                                int mesh);

struct SpectralTerm {
  std::size_t block = 0;
  cplx eigenvalue;
  Mat projection;  // d^2 x d^2 in output coordinates
};

struct A1Report {
  bool ok = true;
  int zeroCount = 0;
  bool simple = true;
  double minImag = 0.0;
  double zeroCutoff = 0.0;
  std::string details;
};

enum class A1Policy { Strict, Report };

struct LevelShift {
  BohrPartition partition;
  std::vector<Mat> blocks;  // block-basis product coordinates
  Mat frame;                // block-basis product coordinates -> output
  Mat full;                 // d^2 x d^2 in output coordinates
  std::vector<SpectralTerm> spectrum;
  double gap = 0.0;
  double norm = 0.0;
  A1Report a1;

  Eigen::Index d() const { return partition.d; }
  /// Sum of the projections of one block (the Bohr projection).
  Mat blockProjection(std::size_t b) const;
};

/// Zero cutoff max(1e-8, 1e-6 ||Lambda||).
double zeroCutoff(double norm);
/// Smallest imaginary part among eigenvalues above the zero cutoff.
double gapOf(const std::vector<cplx>& eigenvalues, double cutoff);

/// Embeds the blocks, diagonalises each, builds the Riesz projections and
/// the gap. `frame` is unitary; pass an empty matrix for the identity.
/// Throws A1Violation under the strict policy.
LevelShift assembleAndDecompose(BohrPartition partition, std::vector<Mat> blocks,
                                Mat frame = Mat(),
                                A1Policy policy = A1Policy::Strict);

/// Lambda for the original system in eigen-product coordinates. Throws
/// AccidentalDegeneracy on colliding Bohr frequencies.
LevelShift levelShiftOperator(const SystemSpec& spec, const EigenSystem& eig,
                              const CorrelationKernel& kernel,
                              A1Policy policy = A1Policy::Strict);

}  // namespace qsg
