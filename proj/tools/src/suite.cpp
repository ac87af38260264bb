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

#include "suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "qsg/dynamics.hpp"
#include "qsg/error.hpp"
#include "qsg/lso.hpp"
#include "qsg/oracle.hpp"
#include "qsg/renorm.hpp"

namespace qsg::app {

using nlohmann::json;

namespace {

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

Mat real2(double a, double b, double c, double e) {
  Mat m(2, 2);
  m << a, b, c, e;
  return m;
}

SystemSpec qubit(double lambda, double beta = 1.0) {
  SystemSpec s;
  s.hamiltonian = real2(0.0, 0.2, 0.2, 1.0);
  s.coupling = real2(0.4, 1.0, 1.0, 0.0);
  s.beta = beta;
  s.lambda = lambda;
  return s;
}

SystemSpec qutrit(double lambda) {
  SystemSpec s;
  s.hamiltonian = Mat::Zero(3, 3);
  s.hamiltonian.diagonal() << 0.0, 0.8, 2.1;
  s.hamiltonian(0, 1) = s.hamiltonian(1, 0) = 0.1;
  s.coupling.resize(3, 3);
  s.coupling << 0.2, 1.0, cplx(0.3, 0.4), 1.0, -0.5, 0.7, cplx(0.3, -0.4), 0.7, 0.1;
  s.beta = 1.0;
  s.lambda = lambda;
  return s;
}

// Qubit for the finite-bath comparisons: real, so the oracle can use the
// real eigensolver.
SystemSpec oracleQubit(double lambda, double beta) {
  SystemSpec s;
  s.hamiltonian = real2(0.0, 0.0, 0.0, 1.0);
  s.coupling = real2(0.3, 1.0, 1.0, 0.0);
  s.beta = beta;
  s.lambda = lambda;
  return s;
}

FormFactor ohmic() { return familyMember(1, 1, 1.0, 0.0); }

struct Pipeline {
  SystemSpec spec;
  EigenSystem eig;
  CorrelationKernel kernel;
  LevelShift lambda;

  explicit Pipeline(const SystemSpec& s, const FormFactor& ff = ohmic(),
                    A1Policy policy = A1Policy::Strict)
      : spec(s),
        eig(eigendecompose(s)),
        kernel(flatten(ff, s.beta)),
        lambda(levelShiftOperator(spec, eig, kernel, policy)) {}

  Mat perturbativeState() const {
    return reducedGibbsPerturbative(
        spec, eig, gibbsExpansion(spec, eig, kernel.flattened(), kernel.tolerance()));
  }
  RenormalizedSystem renormalized(const Mat& rho,
                                  StateSource src = StateSource::Perturbative2) const {
    return renormalize(spec, eig, rho, kernel, src);
  }
};

std::vector<double> logGrid(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i)
    out.push_back(lo * std::pow(hi / lo, n == 1 ? 0.0 : double(i) / (n - 1)));
  return out;
}

Mat gibbsMatrix(const EigenSystem& eig, double beta) {
  return eig.fromEigenbasis(gibbsVector(eig, beta).weights.cast<cplx>().asDiagonal());
}

// 1 and 2: kernel identity and commutation on random systems.
struct RandomInstances {
  std::vector<double> kernel, commutation, norms;
  std::vector<int> dims;
};

RandomInstances randomInstances(std::uint64_t seed) {
  RandomSource rng(seed);
  RandomInstances out;
  for (int i = 0; i < 20; ++i) {
    const int d = 2 + i % 2;
    SystemSpec s;
    s.hamiltonian = rng.hermitian(d);
    s.coupling = rng.hermitian(d);
    s.beta = 1.0;
    s.lambda = 0.1;
    const Pipeline p(s, ohmic(), A1Policy::Report);
    const Vec omega = gibbsVector(p.eig, s.beta).coefficients;
    const Mat L = buildLiouvillian(p.eig).matrix;
    out.kernel.push_back((p.lambda.full * omega).norm());
    out.commutation.push_back(operatorNorm(L * p.lambda.full - p.lambda.full * L));
    out.norms.push_back(p.lambda.norm);
    out.dims.push_back(d);
  }
  return out;
}

CheckResult kernelIdentity(const SuiteOptions& o) {
  const auto r = randomInstances(o.seed);
  double worst = 0.0;
  for (std::size_t i = 0; i < r.kernel.size(); ++i)
    worst = std::max(worst, r.kernel[i] / (1e-5 * (1.0 + r.norms[i])));
  CheckResult c;
  c.pass = worst <= 1.0;
  c.summary = fmt("max ||Lambda Omega||/(1e-5 (1+||Lambda||)) = %.3g (<= 1), max residual %.3g",
                  worst, *std::max_element(r.kernel.begin(), r.kernel.end()));
  c.measured = {{"residuals", r.kernel}, {"norms", r.norms}, {"dims", r.dims}};
  return c;
}

CheckResult commutation(const SuiteOptions& o) {
  const auto r = randomInstances(o.seed);
  double worst = 0.0;
  for (std::size_t i = 0; i < r.kernel.size(); ++i)
    worst = std::max(worst, r.commutation[i] / (1e-8 * r.norms[i]));
  CheckResult c;
  c.pass = worst <= 1.0;
  c.summary = fmt("max ||[L_S,Lambda]||/(1e-8 ||Lambda||) = %.3g (<= 1)", worst);
  c.measured = {{"commutators", r.commutation}, {"norms", r.norms}};
  return c;
}

CheckResult detailedBalance(const SuiteOptions&) {
  double worst = 0.0;
  json rows = json::array();
  for (auto [n, m] : {std::pair{1, 1}, {0, 1}, {1, 2}, {2, 1}, {0, 2}})
    for (double beta : {0.5, 1.0, 3.0}) {
      const auto fff = flatten(familyMember(n, m, 1.0, 0.3), beta);
      double family = 0.0;
      for (int i = 0; i <= 400; ++i) {
        const double w = 0.05 + (10.0 - 0.05) * i / 400.0;
        const double forward = std::exp(-beta * w) * fff.spectralWeight(w);
        if (forward == 0.0) continue;
        family = std::max(family, std::abs(fff.spectralWeight(-w) - forward) / forward);
      }
      worst = std::max(worst, family);
      rows.push_back({{"n", n}, {"m", m}, {"beta", beta}, {"defect", family}});
    }
  CheckResult c;
  c.pass = worst <= 1e-10;
  c.summary = fmt("max relative defect %.3g on [0.05, 10] (<= 1e-10)", worst);
  c.measured = {{"families", rows}};
  return c;
}

CheckResult oracleEquivalence(const SuiteOptions&) {
  SystemSpec s;
  s.hamiltonian = real2(0.0, 0.0, 0.0, 1.0);
  s.coupling = real2(0.0, 1.0, 1.0, 0.0);
  s.beta = 1.0;
  s.lambda = 0.1;
  const auto eig = eigendecompose(s);
  const auto fff = flatten(ohmic(), 1.0);
  const CorrelationKernel kernel(fff);
  const auto part = bohrProjections(eig);
  const Mat v = eig.toEigenbasis(s.coupling);
  // The stated schedule, then two more levels of the same refinement.
  const std::vector<std::pair<double, int>> schedule{
      {0.2, 400}, {0.1, 800}, {0.05, 1600}, {0.025, 3200}, {0.0125, 6400}};

  bool monotone = true;
  double extrapolated = 0.0, statedFinal = 0.0, statedExtrapolated = 0.0;
  json blocks = json::array();
  for (const auto& b : part.blocks) {
    const Mat closed = levelShiftBlock(b, eig.energies, v, kernel);
    std::vector<Mat> oracle;
    std::vector<double> raw;
    for (auto [eps, mesh] : schedule) {
      oracle.push_back(discretizedLevelShiftOracle(b, eig.energies, v, fff, {eps, mesh, 0.0}));
      raw.push_back((oracle.back() - closed).norm());
    }
    for (std::size_t i = 1; i < raw.size(); ++i) monotone = monotone && raw[i] < raw[i - 1];
    auto richardson = [&](std::size_t last) {
      return Mat((8.0 * oracle[last] - 6.0 * oracle[last - 1] + oracle[last - 2]) / 3.0);
    };
    const double ext = (richardson(4) - closed).norm();
    const double statedExt = (richardson(2) - closed).norm();
    extrapolated = std::max(extrapolated, ext);
    statedFinal = std::max(statedFinal, raw[2]);
    statedExtrapolated = std::max(statedExtrapolated, statedExt);
    blocks.push_back({{"frequency", b.frequency}, {"raw_errors", raw},
                      {"extrapolated_error", ext}, {"stated_schedule_extrapolated", statedExt}});
  }
  CheckResult c;
  c.pass = monotone && extrapolated <= 1e-4;
  c.summary = fmt("monotone=%s, eps->0 extrapolated error %.3g (<= 1e-4); raw at (0.05,1600) %.3g",
                  monotone ? "yes" : "no", extrapolated, statedFinal);
  c.measured = {{"schedule", schedule}, {"blocks", blocks}, {"raw_final_stated", statedFinal},
                {"stated_schedule_extrapolated", statedExtrapolated}};
  return c;
}

CheckResult unitality(const SuiteOptions& o) {
  RandomSource rng(o.seed);
  double worstUnit = 0.0, worstHerm = 0.0;
  for (const SystemSpec& s : {qubit(0.1), qutrit(0.1)}) {
    const Pipeline p(s);
    const auto rs = p.renormalized(p.perturbativeState());
    const double decay = 1.0 / (s.lambda * s.lambda * p.lambda.gap);
    const auto sigma = sigmaFamily(s, p.eig, p.lambda);
    const auto tau = tauFamily(s, p.eig, rs);
    const Mat one = Mat::Identity(s.dim(), s.dim());
    std::vector<Mat> xs;
    for (int k = 0; k < 5; ++k) xs.push_back(rng.matrix(s.dim(), s.dim()));
    for (double t : {0.0, 0.5, 1.0, 5.0, 10.0, 50.0, decay, 10.0 * decay})
      for (const auto* fam : {&sigma, &tau}) {
        const Superoperator m = fam->at(t);
        worstUnit = std::max(worstUnit, (m.apply(one) - one).norm());
        for (const Mat& x : xs)
          worstHerm = std::max(worstHerm,
                               (m.apply(x.adjoint()) - m.apply(x).adjoint()).norm() / x.norm());
      }
  }
  CheckResult c;
  c.pass = worstUnit <= 1e-10 && worstHerm <= 1e-10;
  c.summary = fmt("unitality defect %.3g, hermiticity defect %.3g (both <= 1e-10)", worstUnit,
                  worstHerm);
  c.measured = {{"unitality", worstUnit}, {"hermiticity", worstHerm}};
  return c;
}

CheckResult semigroupLaw(const SuiteOptions&) {
  const std::vector<std::pair<double, double>> pairs{
      {0.01, 0.03}, {0.1, 0.5}, {1.0, 1.0}, {3.0, 7.0}, {0.1, 50.0}, {20.0, 80.0}};
  double worst = 0.0;
  json rows = json::array();
  for (const SystemSpec& s : {qubit(0.1), qutrit(0.1)}) {
    const Pipeline p(s);
    const auto rs = p.renormalized(p.perturbativeState());
    const auto sigma = sigmaFamily(s, p.eig, p.lambda);
    const auto delta = deltaFamily(s, p.eig, p.lambda);
    const auto tau = tauFamily(s, p.eig, rs);
    for (auto [t, u] : pairs)
      for (const auto* fam : {&sigma, &delta, &tau}) {
        const double d = semigroupDefect([&](double x) { return fam->at(x); }, t, u);
        worst = std::max(worst, d);
        rows.push_back({{"d", s.dim()}, {"t", t}, {"s", u}, {"defect", d}});
      }
  }
  CheckResult c;
  c.pass = worst <= 1e-9;
  c.summary = fmt("max ||M(t+s) - M(t)M(s)|| = %.3g over t,s in [0.01, 100] (<= 1e-9)", worst);
  c.measured = {{"rows", rows}};
  return c;
}

CheckResult completePositivity(const SuiteOptions&) {
  double worst = std::numeric_limits<double>::infinity();
  json rows = json::array();
  for (const SystemSpec& base : {qubit(0.0), qutrit(0.0)})
    for (double lambda : {0.05, 0.1}) {
      SystemSpec s = base;
      s.lambda = lambda;
      const Pipeline p(s);
      const auto rs = p.renormalized(p.perturbativeState());
      const auto sigma = sigmaFamily(s, p.eig, p.lambda);
      const auto tau = tauFamily(s, p.eig, rs);
      std::vector<double> grid{0.0};
      for (double t : logGrid(1e-2, 100.0 / (lambda * lambda * p.lambda.gap), 29))
        grid.push_back(t);
      double minSigma = std::numeric_limits<double>::infinity(), minTau = minSigma;
      for (double t : grid) {
        minSigma = std::min(minSigma, choiMatrix(dualSchrodinger(sigma.at(t))).minEigenvalue);
        minTau = std::min(minTau, choiMatrix(dualSchrodinger(tau.at(t))).minEigenvalue);
      }
      worst = std::min({worst, minSigma, minTau});
      rows.push_back({{"d", s.dim()}, {"lambda", lambda}, {"t_max", grid.back()},
                      {"min_choi_sigma", minSigma}, {"min_choi_tau", minTau}});
    }
  const double control = choiMatrix(transposeMap(2)).minEigenvalue;
  CheckResult c;
  c.pass = worst >= -1e-8 && std::abs(control + 1.0) <= 1e-12;
  c.summary = fmt("min Choi eigenvalue %.3g (>= -1e-8); transpose control %.6g (= -1)", worst,
                  control);
  c.measured = {{"rows", rows}, {"transpose_control", control}};
  return c;
}

struct ScalingSweep {
  std::vector<double> lambdas{0.02, 0.04, 0.08, 0.16};
  std::vector<RenormalizationShift> shifts;
};

const ScalingSweep& scalingSweep() {
  static const ScalingSweep sweep = [] {
    ScalingSweep out;
    const Pipeline p(qubit(0.0));
    const auto expansion = gibbsExpansion(p.spec, p.eig, p.kernel.flattened());
    for (double lambda : out.lambdas) {
      SystemSpec s = p.spec;
      s.lambda = lambda;
      const Mat rho = reducedGibbsPerturbative(s, p.eig, expansion);
      const auto rs = renormalize(s, p.eig, rho, p.kernel);
      out.shifts.push_back(renormalizationShift(s, p.eig, p.lambda, rs));
    }
    return out;
  }();
  return sweep;
}

std::vector<double> column(const ScalingSweep& s, double RenormalizationShift::*field) {
  std::vector<double> out;
  for (const auto& r : s.shifts) out.push_back(r.*field);
  return out;
}

CheckResult hamiltonianScaling(const SuiteOptions&) {
  const auto& s = scalingSweep();
  const auto h = column(s, &RenormalizationShift::hamiltonian);
  const auto v = column(s, &RenormalizationShift::eigenvectors);
  const double sh = logLogSlope(s.lambdas, h), sv = logLogSlope(s.lambdas, v);
  CheckResult c;
  c.pass = sh >= 0.9 && sv >= 0.9;
  c.summary = fmt("slopes: ||H~ - H~(0)|| %.3f, eigenvectors %.3f (both >= 0.9)", sh, sv);
  c.measured = {{"lambda", s.lambdas}, {"hamiltonian", h}, {"eigenvectors", v},
                {"slope_hamiltonian", sh}, {"slope_eigenvectors", sv}};
  return c;
}

CheckResult levelShiftScaling(const SuiteOptions&) {
  const auto& s = scalingSweep();
  const auto l = column(s, &RenormalizationShift::levelShift);
  const auto e = column(s, &RenormalizationShift::eigenvalues);
  const auto q = column(s, &RenormalizationShift::projections);
  const double sl = logLogSlope(s.lambdas, l), se = logLogSlope(s.lambdas, e),
               sq = logLogSlope(s.lambdas, q);
  CheckResult c;
  c.pass = sl >= 0.9 && se >= 0.9 && sq >= 0.9;
  c.summary = fmt("slopes: ||Lambda - Lambda~|| %.3f, eigenvalues %.3f, projections %.3f (>= 0.9)",
                  sl, se, sq);
  c.measured = {{"lambda", s.lambdas}, {"level_shift", l}, {"eigenvalues", e},
                {"projections", q}, {"slopes", {sl, se, sq}}};
  return c;
}

CheckResult renormalizedKernel(const SuiteOptions&) {
  const auto& s = scalingSweep();
  const auto r = column(s, &RenormalizationShift::kernelResidual);
  const double slope = logLogSlope(s.lambdas, r);
  const double largest = *std::max_element(r.begin(), r.end());
  const bool numericallyZero = largest <= 1e-12;
  CheckResult c;
  c.pass = (slope >= 2.0 || numericallyZero) && r.front() <= 1e-3;
  c.summary = fmt("residual at 0.02 %.3g (<= 1e-3); slope %.3f (>= 2) or all residuals <= 1e-12 "
                  "(max %.3g)",
                  r.front(), slope, largest);
  c.measured = {{"lambda", s.lambdas}, {"residual", r}, {"slope", slope},
                {"identically_zero", numericallyZero}};
  return c;
}

CheckResult returnToEquilibrium(const SuiteOptions& o) {
  RandomSource rng(o.seed + 11);
  double worst = 0.0;
  json rows = json::array();
  for (const SystemSpec& s : {qubit(0.1), qutrit(0.1)}) {
    const Pipeline p(s);
    const Mat rho = p.perturbativeState();
    const auto rs = p.renormalized(rho);
    const double t = 50.0 / (s.lambda * s.lambda * p.lambda.gap);
    const Superoperator T = dualSchrodinger(tauFamily(s, p.eig, rs).at(t));
    for (int k = 0; k < 10; ++k) {
      const double dist = traceNorm(T.apply(rng.densityMatrix(s.dim())) - rho);
      worst = std::max(worst, dist);
    }
    rows.push_back({{"d", s.dim()}, {"t", t}});
  }
  CheckResult c;
  c.pass = worst <= 1e-6;
  c.summary = fmt("max ||T_t rho0 - rho||_1 = %.3g at t = 50/(lambda^2 gamma) (<= 1e-6)", worst);
  c.measured = {{"instances", rows}, {"max_distance", worst}};
  return c;
}

// 12 and 13 share the finite-bath runs.
struct ContrastRun {
  double lambda = 0.0;
  std::vector<double> times, errTau, errSigma;
  double plateau = 0.0;  // ||rho_lambda - rho_0||_1
  double recurrence = 0.0;
  double gapTilde = 0.0;
  double gap = 0.0;
};

constexpr double kContrastBeta = 8.0;

BathDiscretization contrastBath() {
  return discretizeBath(ohmic(), 5, DiscretizationScheme::EqualWeight, 4);
}

const ContrastRun& contrastRun(double lambda) {
  static std::map<double, ContrastRun> cache;
  auto it = cache.find(lambda);
  if (it != cache.end()) return it->second;
  const SystemSpec s = oracleQubit(lambda, kContrastBeta);
  const Pipeline p(s);
  const auto bd = contrastBath();
  ContrastRun run;
  run.lambda = lambda;
  run.recurrence = bd.recurrenceTime();
  const int steps = 160;
  for (int i = 0; i <= steps; ++i) run.times.push_back(0.5 * run.recurrence * i / steps);
  Mat rho0 = Mat::Zero(2, 2);
  rho0(1, 1) = 1.0;
  const OracleRun exact = exactReducedDynamics(s, bd, rho0, run.times);
  const auto rs = p.renormalized(exact.reducedGibbs, StateSource::Oracle);
  const auto sigma = sigmaFamily(s, p.eig, p.lambda);
  const auto tau = tauFamily(s, p.eig, rs);
  for (std::size_t i = 0; i < run.times.size(); ++i) {
    const Mat a = dualSchrodinger(tau.at(run.times[i])).apply(rho0);
    const Mat b = dualSchrodinger(sigma.at(run.times[i])).apply(rho0);
    run.errTau.push_back(traceNorm(exact.reducedStates[i] - a));
    run.errSigma.push_back(traceNorm(exact.reducedStates[i] - b));
  }
  run.plateau = traceNorm(exact.reducedGibbs - gibbsMatrix(p.eig, s.beta));
  run.gap = p.lambda.gap;
  run.gapTilde = rs.LambdaTilde.gap;
  return cache.emplace(lambda, std::move(run)).first->second;
}

CheckResult sigmaTauContrast(const SuiteOptions&) {
  const ContrastRun& run = contrastRun(0.1);
  // Late times: the last quarter of the window below half the recurrence.
  double sigmaMean = 0.0, tauMax = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < run.times.size(); ++i)
    if (run.times[i] >= 0.375 * run.recurrence) {
      sigmaMean += run.errSigma[i];
      tauMax = std::max(tauMax, run.errTau[i]);
      ++count;
    }
  sigmaMean /= count;
  const bool plateau = run.plateau > 0 && std::abs(sigmaMean - run.plateau) <= 0.5 * run.plateau;
  const bool tauBelow = tauMax <= 0.5 * run.plateau;

  const std::vector<double> lambdas{0.025, 0.05, 0.1};
  std::vector<double> shifts;
  const auto bd = contrastBath();
  for (double lambda : lambdas) {
    const SystemSpec s = oracleQubit(lambda, kContrastBeta);
    const auto eig = eigendecompose(s);
    shifts.push_back(traceNorm(exactReducedGibbs(s, bd) - gibbsMatrix(eig, s.beta)));
  }
  const double slope = logLogSlope(lambdas, shifts);

  CheckResult c;
  c.pass = plateau && tauBelow && slope >= 1.9;
  c.summary = fmt("plateau P=%.3g: late err_sigma %.3g (within 50%% of P: %s), late max err_tau "
                  "%.3g (<= P/2: %s), slope of P(lambda) %.3f (>= 1.9); window ends at t=%.3g, "
                  "1/(lambda^2 gamma)=%.3g",
                  run.plateau, sigmaMean, plateau ? "yes" : "no", tauMax, tauBelow ? "yes" : "no",
                  slope, 0.5 * run.recurrence, 1.0 / (0.01 * run.gap));
  c.measured = {{"times", run.times}, {"err_tau", run.errTau}, {"err_sigma", run.errSigma},
                {"plateau", run.plateau}, {"recurrence", run.recurrence},
                {"lambda_sweep", lambdas}, {"gibbs_shift", shifts}, {"slope", slope}};
  return c;
}

CheckResult boundShape(const SuiteOptions&) {
  json rows = json::array();
  std::vector<BoundFit> fits;
  bool within = true;
  for (double lambda : {0.1, 0.05}) {
    const ContrastRun& run = contrastRun(lambda);
    const BoundFit fit = errorBoundFit(run.times, run.errTau, run.errSigma, lambda, run.recurrence);
    const double target = lambda * lambda * run.gapTilde;
    const double rel = std::abs(fit.decayRate - target) / target;
    within = within && rel <= 0.5;
    fits.push_back(fit);
    rows.push_back({{"lambda", lambda}, {"C", fit.prefactor}, {"gamma_prime", fit.decayRate},
                    {"target", target}, {"relative_deviation", rel},
                    {"window", {fit.windowStart, fit.windowEnd}}, {"residual", fit.residual}});
  }
  const bool prefactorDrops = fits[1].prefactor < fits[0].prefactor;
  CheckResult c;
  c.pass = within && prefactorDrops;
  c.summary = fmt("gamma' %.3g vs lambda^2 gamma~ %.3g (lambda 0.1), %.3g vs %.3g (lambda 0.05), "
                  "within 50%%: %s; C %.3g -> %.3g when lambda halves (decrease: %s)",
                  fits[0].decayRate, rows[0]["target"].get<double>(), fits[1].decayRate,
                  rows[1]["target"].get<double>(), within ? "yes" : "no", fits[0].prefactor,
                  fits[1].prefactor, prefactorDrops ? "yes" : "no");
  c.measured = {{"fits", rows}};
  return c;
}

CheckResult gibbsCrossValidation(const SuiteOptions&) {
  const double beta = 1.5, lambda = 0.05;
  const SystemSpec s = oracleQubit(lambda, beta);
  const Pipeline p(s);
  const Mat pert = p.perturbativeState();
  const std::vector<std::pair<int, int>> levels{{1, 30}, {2, 30}, {3, 10}};
  std::vector<Mat> states;
  std::vector<double> raw;
  for (auto [N, cutoff] : levels) {
    const auto bd = discretizeBath(ohmic(), N, DiscretizationScheme::Gauss, cutoff);
    states.push_back(exactReducedGibbs(s, bd));
    raw.push_back(traceNorm(states.back() - pert));
  }
  // Gauss refinement converges like N^-2.
  const double n = 3.0;
  const Mat extrapolated = (n * n * states[2] - (n - 1) * (n - 1) * states[1]) / (2 * n - 1);
  const double dist = traceNorm(extrapolated - pert);
  CheckResult c;
  c.pass = dist <= 1e-3;
  c.summary = fmt("trace distance after N-extrapolation %.3g (<= 1e-3); raw N=1,2,3: %.3g %.3g %.3g",
                  dist, raw[0], raw[1], raw[2]);
  c.measured = {{"beta", beta}, {"lambda", lambda}, {"raw", raw}, {"extrapolated", dist},
                {"levels", levels}};
  return c;
}

}  // namespace

const std::vector<Criterion>& acceptanceCriteria() {
  static const std::vector<Criterion> list{
      {1, "kernel_identity", kernelIdentity},
      {2, "commutation", commutation},
      {3, "detailed_balance", detailedBalance},
      {4, "oracle_equivalence", oracleEquivalence},
      {5, "unitality_hermiticity", unitality},
      {6, "semigroup_law", semigroupLaw},
      {7, "complete_positivity", completePositivity},
      {8, "hamiltonian_scaling", hamiltonianScaling},
      {9, "level_shift_scaling", levelShiftScaling},
      {10, "renormalized_kernel", renormalizedKernel},
      {11, "return_to_equilibrium", returnToEquilibrium},
      {12, "sigma_tau_contrast", sigmaTauContrast},
      {13, "bound_shape", boundShape},
      {14, "gibbs_cross_validation", gibbsCrossValidation},
  };
  return list;
}

std::vector<CheckResult> runAcceptance(const SuiteOptions& opts, const std::vector<int>& only,
                                       const std::function<void(const CheckResult&)>& onResult) {
  std::vector<CheckResult> out;
  for (const auto& crit : acceptanceCriteria()) {
    if (!only.empty() && std::find(only.begin(), only.end(), crit.id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = crit.run(opts);
    } catch (const Error& e) {
      r.pass = false;
      r.summary = std::string("error: ") + e.what();
    }
    r.id = crit.id;
    r.name = crit.name;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (onResult) onResult(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string formatLine(const CheckResult& r) {
  return fmt("criterion %2d %-24s %s  %s  [%.1fs]", r.id, r.name.c_str(), r.pass ? "PASS" : "FAIL",
             r.summary.c_str(), r.seconds);
}

json toJson(const CheckResult& r) {
  return {{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"summary", r.summary},
          {"measured", r.measured}};
}

}  // namespace qsg::app
