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
#include "qsg/linalg.hpp"
#include "qsg/oracle.hpp"
#include "qsg/renorm.hpp"

using namespace qsg;
using namespace qsg::testing;

namespace {

const FormFactor kOhmic = familyMember(1, 1, 1.0, 0.0);

Mat thermal(const EigenSystem& eig, double beta) {
  return eig.fromEigenbasis(gibbsVector(eig, beta).weights.cast<cplx>().asDiagonal());
}

}  // namespace

TEST_CASE("perturbative gibbs state at zero coupling") {
  auto s = genericQubit(0.0);
  const auto eig = eigendecompose(s);
  const auto ex = gibbsExpansion(s, eig, flatten(kOhmic, s.beta));
  CHECK((reducedGibbsPerturbative(s, eig, ex) - thermal(eig, s.beta)).norm() <= 1e-15);
  CHECK(ex.first.norm() == 0.0);
  CHECK(std::abs(ex.second.trace()) < 1e-12);
  CHECK(hermitianDefect(ex.second) < 1e-14);
  s.lambda = 0.6;
  CHECK(errorCode([&] { reducedGibbsPerturbative(s, eig, ex); }) == Errc::InvalidArgument);
}

TEST_CASE("second order matches a two-mode bath to fourth order") {
  BathDiscretization bd;
  bd.frequencies = {0.7, 1.9};
  bd.couplings = {0.6, 0.4};
  bd.fockCutoff = 24;
  const OracleLimits limits{4096, 1e-6};
  auto s = spec(diag({0.0, 1.0}), pauliX(), 1.0);
  s.coupling(0, 0) = 0.3;
  const auto eig = eigendecompose(s);
  const auto ex = gibbsExpansion(s, eig, bd.measure());
  std::vector<double> residual;
  for (double lambda : {0.1, 0.05}) {
    s.lambda = lambda;
    residual.push_back(traceNorm(reducedGibbsPerturbative(s, eig, ex) -
                                 exactReducedGibbs(s, bd, limits)));
  }
  CHECK(residual[0] < 1e-4);
  CHECK(residual[0] / residual[1] > 12.0);
}

TEST_CASE("perturbative state against a six-mode bath") {
  const auto s = spec(diag({0.0, 1.0}), pauliX(), 1.0, 0.1);
  const auto eig = eigendecompose(s);
  const auto fff = flatten(kOhmic, 1.0);
  const Mat pert = reducedGibbsPerturbative(s, eig, gibbsExpansion(s, eig, fff));
  // four levels per mode would need dimension 8192; three leave a visible
  // top population in the softest mode
  const auto bd = discretizeBath(kOhmic, 6, DiscretizationScheme::Gauss, 3);
  const Mat exact = exactReducedGibbs(s, bd, OracleLimits{4096, 0.25});
  CHECK(traceNorm(pert - exact) <= 5e-3);
}

TEST_CASE("renormalised hamiltonian is ground shifted") {
  for (double offset : {0.0, 5.0}) {
    const auto eig = eigendecompose(diag({offset, offset + 1.0}));
    const auto r = renormalizedHamiltonian(thermal(eig, 1.3), 1.3);
    CHECK((r.Htilde - diag({0.0, 1.0})).norm() < 1e-12);
    CHECK(r.eigen.energies(0) == 0.0);
  }
  CHECK(errorCode([] { renormalizedHamiltonian(diag({1.0, 0.0}), 1.0); }) ==
        Errc::SingularState);
}

TEST_CASE("renormalised system reduces at zero coupling") {
  const auto s = genericQubit(0.0);
  const auto eig = eigendecompose(s);
  const CorrelationKernel h(flatten(kOhmic, s.beta));
  const auto rs = renormalize(s, eig, thermal(eig, s.beta), h);
  const LevelShift ls = levelShiftOperator(s, eig, h);
  CHECK((rs.LStilde.matrix - buildLiouvillian(eig).matrix).norm() < 1e-12);
  CHECK((rs.OmegaTilde - gibbsVector(eig, s.beta).coefficients).norm() < 1e-12);
  CHECK((rs.LambdaTilde.full - ls.full).norm() < 1e-10);
}

TEST_CASE("renormalised cyclic vector represents the coupled state") {
  const auto s = genericQubit(0.15);
  const auto eig = eigendecompose(s);
  const CorrelationKernel h(flatten(kOhmic, s.beta));
  const Mat rho = reducedGibbsPerturbative(s, h.flattened(), h);
  const auto rs = renormalize(s, eig, rho, h);
  CHECK(rs.OmegaTilde.norm() == doctest::Approx(1.0).epsilon(1e-14));
  const CyclicVector cv = rs.cyclic();
  RandomSource rng(2);
  for (int k = 0; k < 100; ++k) {
    const Mat x = rng.matrix(2, 2);
    const cplx lhs = rs.OmegaTilde.dot(cv.vec(eig.toEigenbasis(x)));
    CHECK(std::abs(lhs - (rho * x).trace()) <= 1e-12 * x.norm());
  }
  CHECK((rs.LambdaTilde.full * rs.OmegaTilde).norm() <= 1e-12 * rs.LambdaTilde.norm);
}

TEST_CASE("renormalisation shifts grow with the coupling") {
  const auto base = genericQubit(0.0);
  const auto eig = eigendecompose(base);
  const CorrelationKernel h(flatten(kOhmic, base.beta));
  const auto ex = gibbsExpansion(base, eig, h.flattened());
  const LevelShift ls = levelShiftOperator(base, eig, h);
  std::vector<double> lambdas{0.02, 0.04, 0.08}, shift;
  for (double lambda : lambdas) {
    auto s = base;
    s.lambda = lambda;
    const auto rs = renormalize(s, eig, reducedGibbsPerturbative(s, eig, ex), h);
    shift.push_back(renormalizationShift(s, eig, ls, rs).hamiltonian);
  }
  CHECK(logLogSlope(lambdas, shift) == doctest::Approx(2.0).epsilon(0.01));
}
