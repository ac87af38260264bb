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
#include <vector>

#include "helpers.hpp"
#include "qsg/bath.hpp"
#include "qsg/quadrature.hpp"

using namespace qsg;
using namespace qsg::testing;

TEST_CASE("family members") {
  CHECK(familyMember(1, 1, 1.0, 0.0).p() == 0.5);
  CHECK(familyMember(0, 2, 1.0, 0.0).p() == -0.5);
  CHECK(errorCode([] { familyMember(1, 3, 1.0, 0.0); }) == Errc::UnsupportedFamily);
  CHECK(errorCode([] { familyMember(-1, 1, 1.0, 0.0); }) == Errc::UnsupportedFamily);
  CHECK(errorCode([] { familyMember(1, 1, 0.0, 0.0); }) == Errc::InvalidArgument);
}

TEST_CASE("spectral weight closed form and detailed balance") {
  const auto fff = flatten(familyMember(1, 1, 1.0, 0.0), 1.0);
  CHECK(fff.spectralWeight(2.0) ==
        doctest::Approx(8.0 * std::exp(-4.0) / (1.0 - std::exp(-2.0))).epsilon(1e-13));
  for (double u : {0.5, 1.0, 2.0})
    CHECK(fff.spectralWeight(-u) ==
          doctest::Approx(std::exp(-u) * fff.spectralWeight(u)).epsilon(1e-13));
  // vanishes like u^2/beta at the origin
  CHECK(fff.spectralWeight(1e-4) / 1e-8 == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(std::isfinite(fff.logSpectralWeight(-600.0)));
}

TEST_CASE("amplitude is continuous at zero for n = 0") {
  const double beta = 2.0, norm = 1.3;
  const auto fff = flatten(familyMember(0, 2, norm, 0.4), beta);
  CHECK(std::norm(fff.amplitude(0.0)) == doctest::Approx(norm / beta).epsilon(1e-12));
  CHECK(std::norm(fff.amplitude(1e-7)) == doctest::Approx(norm / beta).epsilon(1e-6));
  CHECK(std::norm(fff.amplitude(-1e-7)) == doctest::Approx(norm / beta).epsilon(1e-6));
  // the phase drops out of the weight
  const auto phaseless = flatten(familyMember(0, 2, norm, 0.0), beta);
  CHECK(fff.spectralWeight(0.8) == doctest::Approx(phaseless.spectralWeight(0.8)));
}

TEST_CASE("kernel far outside the support") {
  const CorrelationKernel h(flatten(familyMember(1, 1, 1.0, 0.0), 1.0));
  const double w = -1e6;
  const double total = h.flattened().totalWeight();
  CHECK(std::abs(h.principalValue(w) * -w - total) <= 1e-3 * total);
}

TEST_CASE("imaginary part of the kernel is the weight") {
  const CorrelationKernel h(flatten(familyMember(1, 2, 1.0, 0.0), 0.7));
  for (int i = 0; i < 20; ++i) {
    const double w = -4.0 + 0.41 * i;
    CHECK(std::abs(h(w).imag() + M_PI * h.flattened().spectralWeight(w)) < 1e-14);
  }
}

TEST_CASE("kernel against the eps-regularised integral") {
  const CorrelationKernel h(flatten(familyMember(1, 1, 1.0, 0.0), 1.0));
  const cplx exact = h(1.0);
  std::vector<cplx> values;
  for (double eps : {0.1, 0.05, 0.025}) values.push_back(h.regularized(1.0, eps));
  CHECK(std::abs(richardsonHalving(values) - exact) <= 1e-4);
  // the eps^3 remainder needs one more halving for 1e-5
  values.push_back(h.regularized(1.0, 0.0125));
  CHECK(std::abs(richardsonHalving(values) - exact) <= 1e-5);
}

TEST_CASE("principal value does not depend on the subtraction window") {
  const auto fff = flatten(familyMember(2, 1, 1.0, 0.0), 1.5);
  const CorrelationKernel narrow(fff, {1e-12, 1e-10, 0.25});
  const CorrelationKernel wide(fff, {1e-12, 1e-10, 3.0});
  for (double w : {-2.0, 0.0, 0.3, 4.0, 20.0})
    CHECK(std::abs(narrow(w) - wide(w)) < 1e-10);
}

TEST_CASE("adaptive quadrature") {
  const std::vector<double> pts{0.0, 1.0, M_PI};
  const Integral r = integrate([](double x) { return std::sin(x); }, pts, 1e-12, 1e-14);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(gaussLegendre([](double x) { return std::exp(x); }, 0.0, 1.0, 2) ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
}
