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

#include <cmath>

#include "helpers.hpp"
#include "qsg/dynamics.hpp"
#include "qsg/linalg.hpp"
#include "qsg/oracle.hpp"
#include "qsg/renorm.hpp"

using namespace qsg;
using namespace qsg::testing;

namespace {

struct Fixture {
  SystemSpec spec = genericQubit(0.1);
  EigenSystem eig = eigendecompose(spec);
  CorrelationKernel kernel{flatten(familyMember(1, 1, 1.0, 0.0), spec.beta)};
  LevelShift ls = levelShiftOperator(spec, eig, kernel);
  Mat rho = reducedGibbsPerturbative(spec, kernel.flattened(), kernel);
  RenormalizedSystem rs = renormalize(spec, eig, rho, kernel);
  double decay = 1.0 / (spec.lambda * spec.lambda * ls.gap);
};

Mat unitaryConjugation(const Mat& h, double t) { return expm(cplx(0.0, t) * h); }

}  // namespace

TEST_CASE("maps at time zero are the identity") {
  const Fixture f;
  const Mat id = identityMap(2).rep;
  CHECK((sigmaFamily(f.spec, f.eig, f.ls).at(0.0).rep - id).norm() <= 1e-13);
  CHECK((tauFamily(f.spec, f.eig, f.rs).at(0.0).rep - id).norm() <= 1e-13);
  CHECK((buildTau(0.0, f.spec, f.eig, f.rs).rep - id).norm() <= 1e-13);
}

TEST_CASE("zero coupling gives the free evolution") {
  Fixture f;
  f.spec.lambda = 0.0;
  const Mat rho0 = f.eig.fromEigenbasis(gibbsVector(f.eig, 1.0).weights.cast<cplx>().asDiagonal());
  f.rs = renormalize(f.spec, f.eig, rho0, f.kernel);
  for (double t : {0.3, 2.0}) {
    const Mat u = unitaryConjugation(f.spec.hamiltonian, t);
    const Mat free = conjugationMap(u, Picture::Heisenberg).rep;
    CHECK((buildSigma(t, f.spec, f.eig, f.ls).rep - free).norm() <= 1e-12);
    CHECK((buildTau(t, f.spec, f.eig, f.rs).rep - free).norm() <= 1e-12);
  }
}

TEST_CASE("sigma is unital and delta annihilates the identity") {
  const Fixture f;
  const Mat one = Mat::Identity(2, 2);
  const auto sigma = sigmaFamily(f.spec, f.eig, f.ls);
  const auto delta = deltaFamily(f.spec, f.eig, f.ls);
  const Mat rho0 = f.eig.fromEigenbasis(gibbsVector(f.eig, 1.0).weights.cast<cplx>().asDiagonal());
  RandomSource rng(4);
  for (double t : {1.0, 10.0, 10.0 / (f.spec.lambda * f.spec.lambda)}) {
    CHECK((sigma.at(t).apply(one) - one).norm() <= 1e-10);
    CHECK(delta.at(t).apply(one).norm() <= 1e-10);
    const Mat x = rng.matrix(2, 2);
    const Mat split = delta.at(t).apply(x) + (rho0 * x).trace() * one;
    CHECK((sigma.at(t).apply(x) - split).norm() <= 1e-10);
  }
}

TEST_CASE("delta decays at the gap rate") {
  const Fixture f;
  const auto delta = deltaFamily(f.spec, f.eig, f.ls);
  const double early = mapNorm(delta.at(f.decay));
  const double late = mapNorm(delta.at(5.0 * f.decay));
  CHECK(late <= std::exp(-4.0) * early * 2.0);
}

TEST_CASE("tau returns to the coupled equilibrium") {
  const Fixture f;
  const auto tau = tauFamily(f.spec, f.eig, f.rs);
  RandomSource rng(8);
  const Superoperator m = tau.at(50.0 * f.decay);
  for (int k = 0; k < 5; ++k) {
    const Mat x = rng.matrix(2, 2);
    CHECK((m.apply(x) - (f.rho * x).trace() * Mat::Identity(2, 2)).norm() <= 1e-8);
  }
}

TEST_CASE("schrodinger duals") {
  CHECK((dualSchrodinger(identityMap(3)).rep - identityMap(3).rep).norm() == 0.0);
  RandomSource rng(12);
  const Mat u = expm(cplx(0.0, 1.0) * rng.hermitian(2));
  const Mat rho = rng.densityMatrix(2);
  const Superoperator dual = dualSchrodinger(conjugationMap(u, Picture::Heisenberg));
  CHECK((dual.apply(rho) - u.adjoint() * rho * u).norm() <= 1e-13);

  const Fixture f;
  const Superoperator m = buildTau(3.7, f.spec, f.eig, f.rs);
  const Superoperator t = dualSchrodinger(m);
  for (int k = 0; k < 100; ++k) {
    const Mat r = rng.densityMatrix(2), x = rng.matrix(2, 2);
    CHECK(std::abs((t.apply(r) * x).trace() - (r * m.apply(x)).trace()) <= 1e-10);
  }
}

TEST_CASE("choi matrices of reference maps") {
  const ChoiReport id = choiMatrix(identityMap(2, Picture::Schrodinger));
  CHECK(id.minEigenvalue == doctest::Approx(0.0).epsilon(1e-14));
  Eigen::SelfAdjointEigenSolver<Mat> es(id.matrix);
  CHECK(es.eigenvalues()(3) == doctest::Approx(2.0));
  CHECK(es.eigenvalues()(2) == doctest::Approx(0.0).epsilon(1e-14));

  RandomSource rng(6);
  const Mat sigma = rng.densityMatrix(3);
  const ChoiReport rep = choiMatrix(replacementMap(sigma));
  CHECK((rep.matrix - kron(Mat::Identity(3, 3), sigma)).norm() <= 1e-14);
  CHECK(rep.minEigenvalue >= -1e-14);

  CHECK(choiMatrix(transposeMap(2)).minEigenvalue == doctest::Approx(-1.0));
}

TEST_CASE("semigroup law") {
  const Fixture f;
  const auto sigma = sigmaFamily(f.spec, f.eig, f.ls);
  const auto delta = deltaFamily(f.spec, f.eig, f.ls);
  const auto tau = tauFamily(f.spec, f.eig, f.rs);
  for (const auto* fam : {&sigma, &delta, &tau}) {
    auto at = [&](double t) { return fam->at(t); };
    CHECK(semigroupDefect(at, 0.0, 0.0) <= 1e-15);
    for (auto [t, s] : {std::pair{1.0, 1.0}, {3.0, 7.0}, {0.1, 50.0}})
      CHECK(semigroupDefect(at, t, s) <= 1e-9);
  }
  CHECK((compose(identityMap(2), sigma.at(1.0)).rep - sigma.at(1.0).rep).norm() <= 1e-15);
}

TEST_CASE("the exact reduced dynamics is not a semigroup") {
  auto s = spec(diag({0.0, 1.0}), pauliX(), 8.0, 0.5);
  const auto bd = discretizeBath(familyMember(1, 1, 1.0, 0.0), 3, DiscretizationScheme::Gauss, 4);
  const std::vector<double> times{1.0, 2.0};
  // Schrodinger maps from the images of the matrix units
  std::vector<Mat> reps(2, Mat::Zero(4, 4));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Mat e = Mat::Zero(2, 2);
      e(i, j) = 1.0;
      const auto run = exactReducedDynamics(s, bd, e, times);
      for (int k = 0; k < 2; ++k) reps[k].col(pairIndex(i, j, 2)) = vecRows(run.reducedStates[k]);
    }
  CHECK((reps[1] - reps[0] * reps[0]).norm() > 1e-3);
}

TEST_CASE("complete positivity of the duals over long times") {
  const Fixture f;
  const auto sigma = sigmaFamily(f.spec, f.eig, f.ls);
  const auto tau = tauFamily(f.spec, f.eig, f.rs);
  for (double t : {0.0, 0.01, 1.0, 30.0, f.decay, 100.0 * f.decay}) {
    CHECK(choiMatrix(dualSchrodinger(sigma.at(t))).minEigenvalue >= -1e-8);
    CHECK(choiMatrix(dualSchrodinger(tau.at(t))).minEigenvalue >= -1e-8);
  }
}
