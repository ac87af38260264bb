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

#include "commands.hpp"

#include <cfenv>
#include <cfloat>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "config.hpp"
#include "qsg/dynamics.hpp"
#include "qsg/error.hpp"
#include "qsg/lso.hpp"
#include "qsg/oracle.hpp"
#include "qsg/renorm.hpp"
#include "suite.hpp"

#ifndef QSG_VERSION
#define QSG_VERSION "unknown"
#endif

namespace qsg::app {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string roundingMode() {
  switch (std::fegetround()) {
    case FE_TONEAREST: return "to_nearest";
    case FE_UPWARD: return "upward";
    case FE_DOWNWARD: return "downward";
    case FE_TOWARDZERO: return "toward_zero";
    default: return "unknown";
  }
}

// Loaded config plus the directory the artifacts go to.
struct Context {
  ExperimentConfig cfg;
  CommandOptions opts;
  fs::path out;

  bool wants(const std::string& format) const {
    const auto& f = cfg.output.formats;
    return std::find(f.begin(), f.end(), format) != f.end();
  }
  void writeJson(const std::string& name, json body) const {
    if (!wants("json")) return;
    body["provenance"] = provenance(cfg.hash, opts.seed);
    std::ofstream(out / name) << body.dump(2) << '\n';
  }
  std::ofstream csv(const std::string& name) const {
    if (!wants("csv")) return std::ofstream();
    std::ofstream f(out / name);
    f << std::setprecision(17);
    return f;
  }
};

Context load(const CommandOptions& opts) {
  if (!opts.config) throw UsageError("--config is required");
  Context ctx{loadConfig(*opts.config), opts, {}};
  ctx.out = opts.out ? *opts.out : fs::path(ctx.cfg.output.directory);
  fs::create_directories(ctx.out);
  return ctx;
}

struct Model {
  SystemSpec spec;
  EigenSystem eig;
  CorrelationKernel kernel;

  explicit Model(const ExperimentConfig& cfg)
      : spec(cfg.system),
        eig(eigendecompose(cfg.system, cfg.degeneracyTol)),
        kernel(flatten(cfg.bath, cfg.system.beta), cfg.quad) {}

  LevelShift levelShift(A1Policy policy = A1Policy::Strict) const {
    return levelShiftOperator(spec, eig, kernel, policy);
  }
  Mat perturbativeState() const {
    return reducedGibbsPerturbative(
        spec, eig, gibbsExpansion(spec, eig, kernel.flattened(), kernel.tolerance()));
  }
};

json spectrumJson(const LevelShift& ls) {
  json out = json::array();
  for (const auto& term : ls.spectrum)
    out.push_back({{"block", term.block}, {"frequency", ls.partition.blocks[term.block].frequency},
                   {"eigenvalue", toJson(term.eigenvalue)}});
  return out;
}

json a1Json(const A1Report& r) {
  return {{"ok", r.ok}, {"zero_count", r.zeroCount}, {"simple", r.simple},
          {"min_imag", r.minImag}, {"zero_cutoff", r.zeroCutoff}, {"details", r.details}};
}

int runLso(const Context& ctx) {
  const Model model(ctx.cfg);
  const LevelShift ls = model.levelShift(A1Policy::Report);
  json freqs = json::array(), blocks = json::array();
  for (std::size_t b = 0; b < ls.partition.blocks.size(); ++b) {
    const auto& block = ls.partition.blocks[b];
    freqs.push_back(block.frequency);
    json pairs = json::array();
    for (const auto& p : block.pairs) pairs.push_back({p.first, p.second});
    blocks.push_back({{"frequency", block.frequency}, {"pairs", pairs},
                      {"matrix", toJson(ls.blocks[b])}});
  }
  ctx.writeJson("lso.json", {{"bohr_frequencies", freqs}, {"block_matrices", blocks},
                             {"eigenvalues", spectrumJson(ls)}, {"gap", ls.gap},
                             {"norm", ls.norm}, {"a1_report", a1Json(ls.a1)}});
  std::cout << "lso: " << ls.partition.blocks.size() << " Bohr blocks, gap " << ls.gap
            << ", A1 " << (ls.a1.ok ? "holds" : "violated: " + ls.a1.details) << '\n';
  return ls.a1.ok ? kPass : kCheckFailure;
}

json shiftJson(double lambda, const RenormalizationShift& s) {
  return {{"lambda", lambda}, {"hamiltonian", s.hamiltonian}, {"eigenvectors", s.eigenvectors},
          {"level_shift", s.levelShift}, {"eigenvalues", s.eigenvalues},
          {"projections", s.projections}, {"kernel_residual", s.kernelResidual}};
}

// Runs f over the items with at most `jobs` tasks in flight; results keep
// the input order.
template <class T, class F>
auto parallelMap(const std::vector<T>& items, int jobs, F f) {
  using R = decltype(f(items.front()));
  std::vector<std::future<R>> pending;
  std::vector<R> out;
  for (const T& item : items) {
    if (static_cast<int>(pending.size()) >= std::max(1, jobs)) {
      out.push_back(pending.front().get());
      pending.erase(pending.begin());
    }
    pending.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, f, item));
  }
  for (auto& p : pending) out.push_back(p.get());
  return out;
}

int runRenorm(const Context& ctx) {
  const Model model(ctx.cfg);
  const LevelShift ls = model.levelShift();
  const auto expansion =
      gibbsExpansion(model.spec, model.eig, model.kernel.flattened(), model.kernel.tolerance());
  auto at = [&](double lambda) {
    SystemSpec s = model.spec;
    s.lambda = lambda;
    const Mat rho = reducedGibbsPerturbative(s, model.eig, expansion);
    const auto rs = renormalize(s, model.eig, rho, model.kernel);
    return std::pair{rs, renormalizationShift(s, model.eig, ls, rs)};
  };
  const auto [rs, shift] = at(model.spec.lambda);
  const auto table = parallelMap(ctx.cfg.sweep, ctx.opts.jobs, at);
  json rows = json::array();
  for (std::size_t i = 0; i < table.size(); ++i)
    rows.push_back(shiftJson(ctx.cfg.sweep[i], table[i].second));
  ctx.writeJson("renorm.json",
                {{"lambda", model.spec.lambda}, {"rho", toJson(rs.rho)}, {"Ztilde", rs.Ztilde},
                 {"Htilde_eigs", toJson(rs.eigen.energies)},
                 {"lambda_tilde_spectrum", spectrumJson(rs.LambdaTilde)},
                 {"lambda_tilde_gap", rs.LambdaTilde.gap},
                 {"kernel_residual", shift.kernelResidual}, {"scaling_table", rows}});
  std::cout << "renorm: Ztilde " << rs.Ztilde << ", kernel residual " << shift.kernelResidual
            << ", " << rows.size() << " sweep points\n";
  return kPass;
}

std::vector<double> timeGrid(const Context& ctx) {
  if (ctx.opts.time) return {*ctx.opts.time};
  return ctx.cfg.oracle.times;
}

struct Families {
  Model model;
  LevelShift ls;
  std::optional<RenormalizedSystem> rs;
  std::optional<CyclicSemigroup> family;

  Families(const ExperimentConfig& cfg, const std::string& map, const Mat* rho = nullptr)
      : model(cfg), ls(model.levelShift()) {
    if (map == "sigma") {
      family.emplace(sigmaFamily(model.spec, model.eig, ls));
    } else if (map == "delta") {
      family.emplace(deltaFamily(model.spec, model.eig, ls));
    } else if (map == "tau") {
      rs.emplace(renormalize(model.spec, model.eig, rho ? *rho : model.perturbativeState(),
                             model.kernel, rho ? StateSource::Oracle : StateSource::Perturbative2));
      family.emplace(tauFamily(model.spec, model.eig, *rs));
    } else {
      throw UsageError("--map must be sigma, tau or delta");
    }
  }
};

Mat initialState(const ExperimentConfig& cfg) {
  if (cfg.oracle.rho0) return *cfg.oracle.rho0;
  const Eigen::Index d = cfg.system.dim();
  Mat rho = Mat::Zero(d, d);
  rho(d - 1, d - 1) = 1.0;
  return rho;
}

int runEvolve(const Context& ctx) {
  const Families fam(ctx.cfg, ctx.opts.map);
  const Eigen::Index d = fam.model.spec.dim();
  const Mat one = Mat::Identity(d, d);
  const Mat rho0 = initialState(ctx.cfg);
  const bool unital = ctx.opts.map != "delta";
  bool ok = true;
  auto file = ctx.csv("evolve.csv");
  if (file) file << "t,observable_id,re,im,unitality_defect,choi_min_eig\n";
  for (double t : timeGrid(ctx)) {
    const Superoperator m = fam.family->at(t);
    const double unitality = (m.apply(one) - one).norm();
    const double choiMin = choiMatrix(dualSchrodinger(m)).minEigenvalue;
    if (unital) ok = ok && unitality <= 1e-10 && choiMin >= -1e-8;
    if (unital && t == 0.0) {
      const double defect = (m.rep - identityMap(d).rep).norm();
      ok = ok && defect <= 1e-12;
      std::cout << "evolve: identity defect at t=0 " << defect << '\n';
    }
    // Expectation of each matrix unit E_ij in the initial state.
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) {
        Mat e = Mat::Zero(d, d);
        e(i, j) = 1.0;
        const cplx value = (rho0 * m.apply(e)).trace();
        if (file)
          file << t << ",E" << i << j << ',' << value.real() << ',' << value.imag() << ','
               << unitality << ',' << choiMin << '\n';
      }
  }
  std::cout << "evolve: map " << ctx.opts.map << ", " << timeGrid(ctx).size() << " times, checks "
            << (ok ? "pass" : "fail") << '\n';
  return ok ? kPass : kCheckFailure;
}

int runChoi(const Context& ctx) {
  const Families fam(ctx.cfg, ctx.opts.map);
  const double t = ctx.opts.time.value_or(1.0);
  const Superoperator dual = dualSchrodinger(fam.family->at(t));
  const ChoiReport r = choiMatrix(dual);
  ctx.writeJson("choi.json", {{"map", ctx.opts.map}, {"t", t}, {"picture", "schrodinger"},
                              {"matrix", toJson(r.matrix)}, {"min_eigenvalue", r.minEigenvalue},
                              {"hermiticity_defect", r.hermiticityDefect}});
  std::cout << "choi: map " << ctx.opts.map << " t=" << t << ", min eigenvalue "
            << r.minEigenvalue << '\n';
  const bool ok = ctx.opts.map == "delta" || r.minEigenvalue >= -1e-8;
  return ok ? kPass : kCheckFailure;
}

int runCompare(const Context& ctx) {
  const auto& oc = ctx.cfg.oracle;
  const OracleLimits limits{oc.dimLimit, oc.cutoffTol};
  const auto bd = discretizeBath(ctx.cfg.bath, oc.modes, oc.scheme, oc.fockCutoff);
  const Mat rho0 = initialState(ctx.cfg);
  const OracleRun run = exactReducedDynamics(ctx.cfg.system, bd, rho0, oc.times, limits);
  const Families sig(ctx.cfg, "sigma");
  const Families tau(ctx.cfg, "tau", &run.reducedGibbs);
  std::vector<double> errTau, errSigma;
  for (std::size_t i = 0; i < oc.times.size(); ++i) {
    const double t = oc.times[i];
    errTau.push_back(traceNorm(run.reducedStates[i] - dualSchrodinger(tau.family->at(t)).apply(rho0)));
    errSigma.push_back(
        traceNorm(run.reducedStates[i] - dualSchrodinger(sig.family->at(t)).apply(rho0)));
  }
  const double lambda = ctx.cfg.system.lambda;
  std::optional<BoundFit> fit;
  json fitJson;
  try {
    fit = errorBoundFit(oc.times, errTau, errSigma, lambda, run.recurrenceTime);
    fitJson = {{"C", fit->prefactor}, {"gamma_prime", fit->decayRate},
               {"window", {fit->windowStart, fit->windowEnd}}, {"residual", fit->residual},
               {"points", fit->points}, {"lambda2_gamma_tilde", lambda * lambda * tau.rs->LambdaTilde.gap}};
  } catch (const Error& e) {
    if (e.code() != Errc::FitWindowEmpty) throw;
    fitJson = {{"C", nullptr}, {"gamma_prime", nullptr}, {"window", nullptr},
               {"residual", nullptr}, {"error", e.what()}};
  }
  fitJson["recurrence_time"] = run.recurrenceTime;
  fitJson["top_population"] = run.topPopulation;
  auto file = ctx.csv("compare.csv");
  if (file) {
    file << "t,err_tau,err_sigma,bound_value,recurrence_estimate\n";
    for (std::size_t i = 0; i < oc.times.size(); ++i) {
      const double t = oc.times[i];
      file << t << ',' << errTau[i] << ',' << errSigma[i] << ',';
      if (fit)
        file << fit->prefactor * (1 + lambda * lambda * t) * std::exp(-fit->decayRate * t);
      else
        file << "nan";
      file << ',' << run.recurrenceTime << '\n';
    }
  }
  ctx.writeJson("fit.json", fitJson);
  std::cout << "compare: " << oc.modes << " modes, recurrence "
            << run.recurrenceTime << (fit ? "" : ", no fit window") << '\n';
  return kPass;
}

int runSweep(const Context& ctx) {
  const Model model(ctx.cfg);
  const LevelShift ls = model.levelShift();
  const auto expansion =
      gibbsExpansion(model.spec, model.eig, model.kernel.flattened(), model.kernel.tolerance());
  auto point = [&](double lambda) {
    SystemSpec s = model.spec;
    s.lambda = lambda;
    const Mat rho = reducedGibbsPerturbative(s, model.eig, expansion);
    const auto rs = renormalize(s, model.eig, rho, model.kernel);
    json row = shiftJson(lambda, renormalizationShift(s, model.eig, ls, rs));
    row["gap"] = ls.gap;
    row["gap_tilde"] = rs.LambdaTilde.gap;
    row["decay_rate"] = lambda * lambda * ls.gap;
    row["gibbs_shift"] = traceNorm(rho - expansion.zeroth);
    return row;
  };
  const json rows = parallelMap(ctx.cfg.sweep, ctx.opts.jobs, point);
  ctx.writeJson("sweep.json", {{"rows", rows}});
  auto file = ctx.csv("sweep.csv");
  if (file) {
    file << "lambda,gibbs_shift,hamiltonian,eigenvectors,level_shift,eigenvalues,projections,"
            "kernel_residual,gap_tilde\n";
    for (const auto& r : rows)
      file << r["lambda"].get<double>() << ',' << r["gibbs_shift"].get<double>() << ','
           << r["hamiltonian"].get<double>() << ',' << r["eigenvectors"].get<double>() << ','
           << r["level_shift"].get<double>() << ',' << r["eigenvalues"].get<double>() << ','
           << r["projections"].get<double>() << ',' << r["kernel_residual"].get<double>() << ','
           << r["gap_tilde"].get<double>() << '\n';
  }
  std::cout << "sweep: " << rows.size() << " points\n";
  return kPass;
}

int runCheck(const CommandOptions& opts) {
  const fs::path out = opts.out.value_or(".");
  fs::create_directories(out);
  SuiteOptions so;
  so.seed = opts.seed;
  std::string hash = "none";
  if (opts.config) hash = loadConfig(*opts.config).hash;
  const auto results = runAcceptance(so, opts.only, [](const CheckResult& r) {
    std::cout << formatLine(r) << std::endl;
  });
  json checks = json::array();
  bool all = true;
  for (const auto& r : results) {
    checks.push_back(toJson(r));
    all = all && r.pass;
  }
  json report{{"checks", checks}, {"all_pass", all}, {"provenance", provenance(hash, opts.seed)}};
  std::ofstream(out / "check.json") << report.dump(2) << '\n';
  int passed = 0;
  for (const auto& r : results) passed += r.pass;
  std::cout << passed << "/" << results.size() << " criteria pass\n";
  return all ? kPass : kCheckFailure;
}

int dispatch(const std::string& name, const CommandOptions& opts) {
  if (name == "check") return runCheck(opts);
  const Context ctx = load(opts);
  if (name == "lso") return runLso(ctx);
  if (name == "renorm") return runRenorm(ctx);
  if (name == "evolve") return runEvolve(ctx);
  if (name == "choi") return runChoi(ctx);
  if (name == "compare") return runCompare(ctx);
  if (name == "sweep") return runSweep(ctx);
  throw UsageError("unknown subcommand " + name);
}

bool isConfigError(Errc c) {
  return c == Errc::ParseError || c == Errc::ValidationError || c == Errc::InvalidArgument ||
         c == Errc::DimensionLimit;
}

}  // namespace

json provenance(const std::string& configHash, std::uint64_t seed) {
  return {{"version", QSG_VERSION},
          {"config_hash", configHash},
          {"seed", seed},
          {"rng", "std::mt19937_64"},
          {"compiler", __VERSION__},
          {"float_environment",
           {{"rounding", roundingMode()}, {"flt_eval_method", FLT_EVAL_METHOD},
            {"double_digits", DBL_MANT_DIG}}}};
}

int runCommand(const std::string& name, const CommandOptions& opts) {
  try {
    return dispatch(name, opts);
  } catch (const UsageError& e) {
    std::cerr << "qsg " << name << ": " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    std::cerr << "qsg " << name << ": " << e.what() << '\n';
    return isConfigError(e.code()) ? kUsageError : kNumericFailure;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "qsg " << name << ": " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace qsg::app
