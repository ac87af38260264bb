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

#include <functional>
#include <string>

#include "qsg/lso.hpp"
#include "qsg/model.hpp"
#include "qsg/renorm.hpp"

namespace qsg {

enum class Picture { Heisenberg, Schrodinger };

/// A linear map on d x d matrices, represented on row-major vec(X) in the
/// computational basis.
struct Superoperator {
  Eigen::Index d = 0;
  Mat rep;
  Picture picture = Picture::Heisenberg;
  std::string meta;

  Mat apply(const Mat& x) const { return unvecRows(rep * vecRows(x), d); }
};

Superoperator identityMap(Eigen::Index d, Picture picture = Picture::Heisenberg);
/// X -> U X U^dagger.
Superoperator conjugationMap(const Mat& u, Picture picture);
Superoperator transposeMap(Eigen::Index d);
/// rho -> Tr(rho) sigma.
Superoperator replacementMap(const Mat& sigma);

/// X -> devec(exp(i t G) [P_perp] vec(X)) for a generator G on the doubled
/// space and reference vector Omega, expressed in coordinates where the
/// vectorisation of a computational-basis X is `toVec * vec(X)`.
class CyclicSemigroup {
 public:
  CyclicSemigroup(Mat generator, Mat toVec, Vec omega, bool projectOut,
                  std::string meta);

  Eigen::Index dim() const { return d_; }
  const Mat& generator() const { return generator_; }
  const Vec& omega() const { return omega_; }
  Superoperator at(double t) const;

 private:
  Eigen::Index d_;
  Mat generator_;
  Mat toVec_;
  Mat fromVec_;
  Vec omega_;
  bool projectOut_;
  std::string meta_;
};

/// exp(it(L_S + lambda^2 Lambda)) around the Gibbs vector.
CyclicSemigroup sigmaFamily(const SystemSpec& spec, const EigenSystem& eig,
                            const LevelShift& lambda);
/// As sigma with the projection onto the complement of the Gibbs vector.
CyclicSemigroup deltaFamily(const SystemSpec& spec, const EigenSystem& eig,
                            const LevelShift& lambda);
/// exp(it(L~ + lambda^2 Lambda~)) around Omega~.
CyclicSemigroup tauFamily(const SystemSpec& spec, const EigenSystem& eig,
                          const RenormalizedSystem& rs);

Superoperator buildSigma(double t, const SystemSpec& spec, const EigenSystem& eig,
                         const LevelShift& lambda);
Superoperator buildDelta(double t, const SystemSpec& spec, const EigenSystem& eig,
                         const LevelShift& lambda);
Superoperator buildTau(double t, const SystemSpec& spec, const EigenSystem& eig,
                       const RenormalizedSystem& rs);

/// The map T with Tr(T(rho) X) = Tr(rho M(X)).
Superoperator dualSchrodinger(const Superoperator& map);

struct ChoiReport {
  Mat matrix;
  double minEigenvalue = 0.0;
  double hermiticityDefect = 0.0;
};

/// sum_ij E_ij ⊗ map(E_ij), with rows (i,k) and columns (j,l).
ChoiReport choiMatrix(const Superoperator& map);

Superoperator compose(const Superoperator& a, const Superoperator& b);

/// Operator norm of the representation.
double mapNorm(const Superoperator& map);

/// ||M(t+s) - M(t) M(s)||.
double semigroupDefect(const std::function<Superoperator(double)>& family,
                       double t, double s);

}  // namespace qsg
