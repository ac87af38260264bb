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

using namespace qsg;
using namespace qsg::testing;

TEST_CASE("diagonal hamiltonian keeps the standard basis") {
  const auto eig = eigendecompose(diag({0.0, 1.0}));
  CHECK(eig.energies(0) == doctest::Approx(0.0));
  CHECK(eig.energies(1) == doctest::Approx(1.0));
  CHECK((eig.vectors - Mat::Identity(2, 2)).norm() < 1e-14);
}

TEST_CASE("sigma_x eigenvectors") {
  const auto eig = eigendecompose(pauliX());
  CHECK(eig.energies(0) == doctest::Approx(-1.0));
  CHECK(eig.energies(1) == doctest::Approx(1.0));
  const double r = 1.0 / std::sqrt(2.0);
  Vec lower(2), upper(2);
  lower << r, -r;
  upper << r, r;
  CHECK(std::abs(std::abs(eig.vectors.col(0).dot(lower)) - 1.0) < 1e-14);
  CHECK(std::abs(std::abs(eig.vectors.col(1).dot(upper)) - 1.0) < 1e-14);
}

TEST_CASE("random 3x3 eigenpairs against the characteristic polynomial") {
  RandomSource rng(7);
  const Mat h = rng.hermitian(3);
  const auto eig = eigendecompose(h);
  for (int k = 0; k < 3; ++k) {
    CHECK((h * eig.vectors.col(k) - eig.energies(k) * eig.vectors.col(k)).norm() <= 1e-10);
    const Mat shifted = h - eig.energies(k) * Mat::Identity(3, 3);
    CHECK(std::abs(shifted.determinant()) <= 1e-10 * std::pow(h.norm(), 3));
  }
  // coefficients of det(x - h): roots must reproduce trace and determinant
  CHECK(std::abs(eig.energies.sum() - h.trace().real()) < 1e-12);
  CHECK(std::abs(eig.energies.prod() - h.determinant().real()) < 1e-12);
}

TEST_CASE("degenerate and non-hermitian input is rejected") {
  CHECK(errorCode([] { eigendecompose(Mat::Identity(2, 2)); }) == Errc::DegenerateSpectrum);
  Mat h = diag({0.0, 1.0});
  h(0, 1) = 0.5;
  CHECK(errorCode([&] { validate(spec(h, pauliX())); }) == Errc::NonHermitian);
}

TEST_CASE("liouvillian spectrum is the set of differences") {
  const auto l = buildLiouvillian(eigendecompose(diag({0.0, 1.0, 3.0})));
  std::vector<double> d;
  for (Eigen::Index i = 0; i < 9; ++i) d.push_back(l.matrix(i, i).real());
  std::sort(d.begin(), d.end());
  const std::vector<double> expected{-3, -2, -1, 0, 0, 0, 1, 2, 3};
  for (int i = 0; i < 9; ++i) CHECK(d[i] == doctest::Approx(expected[i]));
  CHECK((l.matrix - Mat(l.matrix.diagonal().asDiagonal())).norm() == 0.0);
}

TEST_CASE("gibbs vector at beta = ln 4") {
  const auto omega = gibbsVector(eigendecompose(diag({0.0, 1.0})), std::log(4.0));
  Vec expected(4);
  expected << 2.0 / std::sqrt(5.0), 0.0, 0.0, 1.0 / std::sqrt(5.0);
  CHECK((omega.coefficients - expected).norm() < 1e-15);
  CHECK(omega.weights.sum() == doctest::Approx(1.0));
}

TEST_CASE("gibbs vector reproduces thermal expectations") {
  RandomSource rng(3);
  const Mat h = rng.hermitian(3);
  const auto eig = eigendecompose(h);
  const auto omega = gibbsVector(eig, 0.7);
  const Mat rho = eig.fromEigenbasis(omega.weights.cast<cplx>().asDiagonal());
  for (int k = 0; k < 5; ++k) {
    const Mat x = rng.matrix(3, 3);
    const cplx lhs = omega.coefficients.dot(vecCyclic(eig.toEigenbasis(x), omega));
    CHECK(std::abs(lhs - (rho * x).trace()) < 1e-13);
  }
  CHECK(errorCode([&] { gibbsVector(eigendecompose(diag({0.0, 1.0})), 800.0); }) ==
        Errc::Overflow);
}

TEST_CASE("cyclic vectorisation") {
  const auto omega = gibbsVector(eigendecompose(diag({0.0, 1.0})), 1.0);
  CHECK((vecCyclic(Mat::Identity(2, 2), omega) - omega.coefficients).norm() < 1e-15);
  Mat e01 = Mat::Zero(2, 2);
  e01(0, 1) = 1.0;
  const Vec v = vecCyclic(e01, omega);
  CHECK(std::abs(v(pairIndex(0, 1, 2)) - std::sqrt(omega.weights(1))) < 1e-15);
  CHECK(v.norm() == doctest::Approx(std::sqrt(omega.weights(1))));
  RandomSource rng(5);
  const Mat x = rng.matrix(2, 2);
  CHECK((devecCyclic(vecCyclic(x, omega), omega) - x).norm() <= 1e-12);
  const CyclicVector cv = CyclicVector::fromGibbs(omega);
  CHECK((cv.devecMatrix() * cv.vecMatrix() - Mat::Identity(4, 4)).norm() <= 1e-12);
}

TEST_CASE("modular conjugation") {
  const auto omega = gibbsVector(eigendecompose(diag({0.0, 1.0})), 1.0);
  CHECK((modularConjugation(omega.coefficients) - omega.coefficients).norm() == 0.0);
  Vec v = Vec::Zero(4);
  v(pairIndex(0, 1, 2)) = cplx(0.0, 1.0);
  const Vec j = modularConjugation(v);
  CHECK(j(pairIndex(1, 0, 2)) == cplx(0.0, -1.0));
  CHECK(j.norm() == doctest::Approx(1.0));
}

TEST_CASE("zero hamiltonian limit gives the maximally entangled vector") {
  EigenSystem eig{RVec::Zero(2), Mat::Identity(2, 2)};
  const auto omega = gibbsVector(eig, 1.0);
  CHECK(std::abs(omega.coefficients(0) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(omega.coefficients(3) - 1.0 / std::sqrt(2.0)) < 1e-15);
}
