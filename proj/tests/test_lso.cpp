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
#include "qsg/lso.hpp"

using namespace qsg;
using namespace qsg::testing;

namespace {

const BohrBlock& blockAt(const BohrPartition& p, double e) {
  for (const auto& b : p.blocks)
    if (std::abs(b.frequency - e) < 1e-9) return b;
  FAIL("no block at " << e);
  return p.blocks.front();
}

CorrelationKernel ohmicKernel(double beta = 1.0) {
  return CorrelationKernel(flatten(familyMember(1, 1, 1.0, 0.0), beta));
}

}  // namespace

TEST_CASE("bohr partition of a qubit") {
  const auto p = bohrProjections(eigendecompose(diag({0.0, 1.0})));
  CHECK(p.blocks.size() == 3);
  CHECK(blockAt(p, 0.0).pairs.size() == 2);
  CHECK(blockAt(p, 1.0).pairs == std::vector<IndexPair>{{1, 0}});
  CHECK(blockAt(p, -1.0).pairs == std::vector<IndexPair>{{0, 1}});
  CHECK_FALSE(p.hasAccidental());
  CHECK(p.blocks[p.zeroBlock()].frequency == 0.0);
}

TEST_CASE("equally spaced ladder has accidental collisions") {
  const auto eig = eigendecompose(diag({0.0, 1.0, 2.0}));
  const auto p = bohrProjections(eig);
  CHECK(p.hasAccidental());
  CHECK(blockAt(p, 1.0).pairs.size() == 2);
  CHECK(blockAt(p, 1.0).accidental);
  const CorrelationKernel h = ohmicKernel();
  Mat v = Mat::Ones(3, 3);
  CHECK(errorCode([&] { levelShiftOperator(spec(diag({0.0, 1.0, 2.0}), v), eig, h); }) ==
        Errc::AccidentalDegeneracy);
}

TEST_CASE("generic qutrit has seven frequencies") {
  const auto p = bohrProjections(eigendecompose(diag({0.0, 1.0, 2.5})));
  CHECK(p.blocks.size() == 7);
  CHECK(p.blocks[p.zeroBlock()].pairs.size() == 3);
}

TEST_CASE("clusters closer than ten tolerances are ambiguous") {
  RVec e(3);
  e << 0.0, 1.0, 2.00000005;
  CHECK(errorCode([&] { bohrProjections(e, 1e-8); }) == Errc::AmbiguousClustering);
}

TEST_CASE("level shift blocks do not depend on the coupling constant") {
  const CorrelationKernel h = ohmicKernel();
  auto s = genericQubit(0.1);
  const auto eig = eigendecompose(s);
  const Mat a = levelShiftBlock(0.0, s, eig, h);
  s.lambda = 0.7;
  CHECK((levelShiftBlock(0.0, s, eig, h) - a).norm() == 0.0);
}

TEST_CASE("zero coupling") {
  const CorrelationKernel h = ohmicKernel();
  const auto s = spec(diag({0.0, 1.0}), Mat::Zero(2, 2));
  const auto eig = eigendecompose(s);
  for (double e : {-1.0, 0.0, 1.0}) {
    CHECK(levelShiftBlock(e, s, eig, h).norm() == 0.0);
    CHECK(discretizedLevelShiftOracle(e, s, eig, h.flattened(), 0.1, 200).norm() == 0.0);
  }
  CHECK(errorCode([&] { levelShiftOperator(s, eig, h); }) == Errc::A1Violation);
  const auto reported = levelShiftOperator(s, eig, h, A1Policy::Report);
  CHECK_FALSE(reported.a1.ok);
  CHECK(reported.norm == 0.0);
}

TEST_CASE("closed form against the discretised resolvent") {
  const CorrelationKernel h = ohmicKernel();
  const auto s = spec(diag({0.0, 1.0}), pauliX());
  const auto eig = eigendecompose(s);
  for (double e : {-1.0, 0.0, 1.0}) {
    const Mat closed = levelShiftBlock(e, s, eig, h);
    double previous = INFINITY;
    for (auto [eps, mesh] : {std::pair{0.2, 400}, {0.1, 800}, {0.05, 1600}}) {
      const double err =
          (discretizedLevelShiftOracle(e, s, eig, h.flattened(), eps, mesh) - closed).norm();
      CHECK(err < previous);
      previous = err;
    }
    // the stated schedule stops at a bias of order eps
    CHECK(previous < 0.06);
  }
}

TEST_CASE("blocks vanish as the frequency leaves the support") {
  const CorrelationKernel h = ohmicKernel();
  double previous = INFINITY;
  for (double gap : {20.0, 40.0, 80.0}) {
    const auto s = spec(diag({0.0, gap}), pauliX());
    const double norm = levelShiftBlock(gap, s, eigendecompose(s), h).norm();
    CHECK(norm < previous);
    CHECK(norm * gap < 2.0 * h.flattened().totalWeight());
    previous = norm;
  }
}

TEST_CASE("gap of a spectrum") {
  const std::vector<cplx> spectrum{0.0, {0.1, 0.2}, {-0.1, 0.3}};
  CHECK(gapOf(spectrum, zeroCutoff(1.0)) == doctest::Approx(0.2));
  CHECK(zeroCutoff(0.0) == 1e-8);
}

TEST_CASE("qubit level shift spectrum and kernel") {
  const CorrelationKernel h = ohmicKernel();
  const auto s = spec(diag({0.0, 1.0}), pauliX());
  const auto eig = eigendecompose(s);
  const LevelShift ls = levelShiftOperator(s, eig, h);
  CHECK(ls.a1.ok);
  CHECK(ls.a1.zeroCount == 1);
  int positive = 0;
  for (const auto& t : ls.spectrum) positive += t.eigenvalue.imag() > ls.a1.zeroCutoff;
  CHECK(positive == 3);
  CHECK(ls.gap > 0.4);
  const Vec omega = gibbsVector(eig, 1.0).coefficients;
  CHECK((ls.full * omega).norm() <= 1e-12);
  const Mat l = buildLiouvillian(eig).matrix;
  CHECK((l * ls.full - ls.full * l).norm() <= 1e-12);

  // Riesz projections resolve the operator
  Mat sum = Mat::Zero(4, 4), recon = Mat::Zero(4, 4);
  for (const auto& t : ls.spectrum) {
    sum += t.projection;
    recon += t.eigenvalue * t.projection;
  }
  CHECK((sum - Mat::Identity(4, 4)).norm() <= 1e-12);
  CHECK((recon - ls.full).norm() <= 1e-12);
}

TEST_CASE("kernel identity on random systems") {
  RandomSource rng(11);
  const CorrelationKernel h = ohmicKernel(0.6);
  for (int i = 0; i < 5; ++i) {
    const auto s = spec(rng.hermitian(3), rng.hermitian(3), 0.6);
    const auto eig = eigendecompose(s);
    const LevelShift ls = levelShiftOperator(s, eig, h, A1Policy::Report);
    CHECK((ls.full * gibbsVector(eig, 0.6).coefficients).norm() <= 1e-10 * (1 + ls.norm));
  }
}
