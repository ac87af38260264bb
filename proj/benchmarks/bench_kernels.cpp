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

#include <benchmark/benchmark.h>

#include "qsg/bath.hpp"
#include "qsg/dynamics.hpp"
#include "qsg/linalg.hpp"
#include "qsg/lso.hpp"
#include "qsg/oracle.hpp"
#include "qsg/renorm.hpp"

namespace {

using namespace qsg;

SystemSpec randomSpec(int d, std::uint64_t seed) {
  RandomSource rng(seed);
  return {rng.hermitian(d), rng.hermitian(d), 1.0, 0.1};
}

void BM_KernelEvaluation(benchmark::State& state) {
  const CorrelationKernel h(flatten(familyMember(1, 1, 1.0, 0.0), 1.0));
  double w = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(h(w));
    w = w > 3.0 ? -3.0 : w + 0.11;
  }
}
BENCHMARK(BM_KernelEvaluation);

void BM_LevelShiftOperator(benchmark::State& state) {
  const auto s = randomSpec(static_cast<int>(state.range(0)), 1);
  const auto eig = eigendecompose(s);
  const CorrelationKernel h(flatten(familyMember(1, 1, 1.0, 0.0), s.beta));
  for (auto _ : state)
    benchmark::DoNotOptimize(levelShiftOperator(s, eig, h, A1Policy::Report).gap);
}
BENCHMARK(BM_LevelShiftOperator)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_TauAt(benchmark::State& state) {
  // weak enough that the renormalised Bohr frequencies stay apart
  SystemSpec s = randomSpec(static_cast<int>(state.range(0)), 2);
  s.lambda = 0.02;
  const auto eig = eigendecompose(s);
  const CorrelationKernel h(flatten(familyMember(1, 1, 1.0, 0.0), s.beta));
  const auto rs = renormalize(s, eig, reducedGibbsPerturbative(s, h.flattened(), h), h,
                              StateSource::Perturbative2, A1Policy::Report);
  const auto tau = tauFamily(s, eig, rs);
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tau.at(t).rep.data());
    t += 0.5;
  }
}
BENCHMARK(BM_TauAt)->Arg(2)->Arg(4);

void BM_Expm(benchmark::State& state) {
  RandomSource rng(3);
  const Mat a = cplx(0.0, 1.0) * rng.hermitian(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(expm(a).data());
}
BENCHMARK(BM_Expm)->Arg(4)->Arg(16)->Arg(64);

void BM_ReducedGibbsOracle(benchmark::State& state) {
  SystemSpec s = randomSpec(2, 4);
  s.beta = 8.0;
  const auto bd = discretizeBath(familyMember(1, 1, 1.0, 0.0), static_cast<int>(state.range(0)),
                                 DiscretizationScheme::Gauss, 4);
  for (auto _ : state) benchmark::DoNotOptimize(exactReducedGibbs(s, bd).data());
}
BENCHMARK(BM_ReducedGibbsOracle)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
