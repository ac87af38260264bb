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

#include "qsg/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "qsg/error.hpp"

namespace qsg {

namespace {

// Permutation taking vec(X) to vec(X^T).
Mat swapMatrix(Eigen::Index d) {
  Mat p = Mat::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) p(j * d + i, i * d + j) = 1.0;
  return p;
}

// vec(X) -> vec(U^dagger X U R): eigen-product coordinates of (X ⊗ 1) Omega.
Mat cyclicTransform(const Mat& u, const Mat& root) {
  return kron(u.adjoint(), (u * root).transpose());
}

std::string describe(const char* name, const SystemSpec& spec) {
  std::ostringstream os;
  os << name << " lambda=" << spec.lambda << " beta=" << spec.beta;
  return os.str();
}

}  // namespace

Superoperator identityMap(Eigen::Index d, Picture picture) {
  return {d, Mat::Identity(d * d, d * d), picture, "identity"};
}

Superoperator conjugationMap(const Mat& u, Picture picture) {
  return {u.rows(), kron(u, u.conjugate()), picture, "conjugation"};
}

Superoperator transposeMap(Eigen::Index d) {
  return {d, swapMatrix(d), Picture::Schrodinger, "transpose"};
}

Superoperator replacementMap(const Mat& sigma) {
  const Eigen::Index d = sigma.rows();
  return {d, vecRows(sigma) * vecRows(Mat::Identity(d, d)).transpose(),
          Picture::Schrodinger, "replacement"};
}

CyclicSemigroup::CyclicSemigroup(Mat generator, Mat toVec, Vec omega,
                                 bool projectOut, std::string meta)
    : generator_(std::move(generator)),
      toVec_(std::move(toVec)),
      omega_(std::move(omega)),
      projectOut_(projectOut),
      meta_(std::move(meta)) {
  d_ = static_cast<Eigen::Index>(std::lround(std::sqrt(double(generator_.rows()))));
  fromVec_ = toVec_.inverse();
}

Superoperator CyclicSemigroup::at(double t) const {
  Mat propagator = expm(kI * t * generator_);
  if (!propagator.allFinite())
    throw Error(Errc::ExponentialOverflow, "propagator is not finite");
  if (projectOut_)
    propagator -= (propagator * omega_) * omega_.adjoint();
  std::ostringstream os;
  os << meta_ << " t=" << t;
  return {d_, fromVec_ * propagator * toVec_, Picture::Heisenberg, os.str()};
}

CyclicSemigroup sigmaFamily(const SystemSpec& spec, const EigenSystem& eig,
                            const LevelShift& lambda) {
  const auto omega = gibbsVector(eig, spec.beta);
  const Mat root = CyclicVector::fromGibbs(omega).root();
  const Mat g = buildLiouvillian(eig).matrix +
                spec.lambda * spec.lambda * lambda.full;
  return {g, cyclicTransform(eig.vectors, root), omega.coefficients, false,
          describe("sigma", spec)};
}

CyclicSemigroup deltaFamily(const SystemSpec& spec, const EigenSystem& eig,
                            const LevelShift& lambda) {
  const auto omega = gibbsVector(eig, spec.beta);
  const Mat root = CyclicVector::fromGibbs(omega).root();
  const Mat g = buildLiouvillian(eig).matrix +
                spec.lambda * spec.lambda * lambda.full;
  return {g, cyclicTransform(eig.vectors, root), omega.coefficients, true,
          describe("delta", spec)};
}

CyclicSemigroup tauFamily(const SystemSpec& spec, const EigenSystem& eig,
                          const RenormalizedSystem& rs) {
  const Mat g = rs.LStilde.matrix +
                spec.lambda * spec.lambda * rs.LambdaTilde.full;
  return {g, cyclicTransform(eig.vectors, rs.rootTilde), rs.OmegaTilde, false,
          describe("tau", spec)};
}

Superoperator buildSigma(double t, const SystemSpec& spec, const EigenSystem& eig,
                         const LevelShift& lambda) {
  return sigmaFamily(spec, eig, lambda).at(t);
}

Superoperator buildDelta(double t, const SystemSpec& spec, const EigenSystem& eig,
                         const LevelShift& lambda) {
  return deltaFamily(spec, eig, lambda).at(t);
}

Superoperator buildTau(double t, const SystemSpec& spec, const EigenSystem& eig,
                       const RenormalizedSystem& rs) {
  return tauFamily(spec, eig, rs).at(t);
}

Superoperator dualSchrodinger(const Superoperator& map) {
  const Mat p = swapMatrix(map.d);
  return {map.d, p * map.rep.transpose() * p,
          map.picture == Picture::Heisenberg ? Picture::Schrodinger
                                             : Picture::Heisenberg,
          "dual of " + map.meta};
}

ChoiReport choiMatrix(const Superoperator& map) {
  const Eigen::Index d = map.d;
  ChoiReport out;
  out.matrix.resize(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index k = 0; k < d; ++k)
        for (Eigen::Index l = 0; l < d; ++l)
          out.matrix(i * d + k, j * d + l) = map.rep(k * d + l, i * d + j);
  out.hermiticityDefect = hermitianDefect(out.matrix);
  out.minEigenvalue = minHermitianEigenvalue(out.matrix);
  return out;
}

Superoperator compose(const Superoperator& a, const Superoperator& b) {
  return {a.d, a.rep * b.rep, a.picture, a.meta + " o " + b.meta};
}

double mapNorm(const Superoperator& map) { return operatorNorm(map.rep); }

double semigroupDefect(const std::function<Superoperator(double)>& family,
                       double t, double s) {
  const Superoperator whole = family(t + s);
  const Superoperator split = compose(family(t), family(s));
  return operatorNorm(whole.rep - split.rep);
}

}  // namespace qsg
