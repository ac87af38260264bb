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

#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "qsg/error.hpp"

namespace qsg::app {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& key, const std::string& reason) {
  throw ConfigError(Errc::ValidationError, key, reason);
}

void rejectUnknown(const json& obj, const std::string& path,
                   const std::set<std::string>& allowed) {
  if (!obj.is_object()) invalid(path, "expected an object");
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) invalid(path + "." + key, "unknown key");
}

double number(const json& obj, const std::string& path, const char* key,
              std::optional<double> fallback) {
  if (!obj.contains(key)) {
    if (!fallback) invalid(path + "." + key, "missing");
    return *fallback;
  }
  const json& v = obj.at(key);
  if (!v.is_number() || !std::isfinite(v.get<double>()))
    invalid(path + "." + key, "expected a finite number");
  return v.get<double>();
}

long integer(const json& obj, const std::string& path, const char* key,
             std::optional<long> fallback) {
  if (!obj.contains(key)) {
    if (!fallback) invalid(path + "." + key, "missing");
    return *fallback;
  }
  const json& v = obj.at(key);
  if (!v.is_number_integer()) invalid(path + "." + key, "expected an integer");
  return v.get<long>();
}

Mat matrix(const json& v, const std::string& key, long d) {
  if (!v.is_array() || static_cast<long>(v.size()) != d * d)
    invalid(key, "expected d*d row-major [re, im] pairs");
  Mat m(d, d);
  for (long k = 0; k < d * d; ++k) {
    const json& e = v[k];
    cplx z;
    if (e.is_number()) {
      z = e.get<double>();
    } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
      z = cplx(e[0].get<double>(), e[1].get<double>());
    } else {
      invalid(key, "entry " + std::to_string(k) + " is not an [re, im] pair");
    }
    m(k / d, k % d) = z;
  }
  return m;
}

void requireHermitian(const Mat& m, const std::string& key) {
  const double scale = std::max(m.norm(), 1e-300);
  if ((m - m.adjoint()).norm() > 1e-12 * scale) invalid(key, "hermiticity");
}

std::vector<double> numberList(const json& v, const std::string& key) {
  if (!v.is_array() || v.empty()) invalid(key, "expected a non-empty list of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) invalid(key, "expected a non-empty list of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

json toJson(cplx z) { return json::array({z.real(), z.imag()}); }

json toJson(const Mat& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(toJson(m(i, j)));
  return out;
}

json toJson(const RVec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

std::string fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

ExperimentConfig fromJson(const json& root) {
  rejectUnknown(root, "config", {"system", "bath", "quad", "oracle", "sweep", "output"});
  if (!root.contains("system")) invalid("system", "missing");
  ExperimentConfig cfg;

  const json& sys = root.at("system");
  rejectUnknown(sys, "system", {"d", "H_S", "V_S", "beta", "lambda", "degeneracy_tol"});
  const long d = integer(sys, "system", "d", std::nullopt);
  if (d < 2 || d > 16) invalid("system.d", "expected 2 <= d <= 16");
  if (!sys.contains("H_S")) invalid("system.H_S", "missing");
  if (!sys.contains("V_S")) invalid("system.V_S", "missing");
  cfg.system.hamiltonian = matrix(sys.at("H_S"), "system.H_S", d);
  cfg.system.coupling = matrix(sys.at("V_S"), "system.V_S", d);
  requireHermitian(cfg.system.hamiltonian, "system.H_S");
  requireHermitian(cfg.system.coupling, "system.V_S");
  cfg.system.beta = number(sys, "system", "beta", std::nullopt);
  if (!(cfg.system.beta > 0)) invalid("system.beta", "expected beta > 0");
  cfg.system.lambda = number(sys, "system", "lambda", 0.0);
  cfg.degeneracyTol = number(sys, "system", "degeneracy_tol", kDefaultDegeneracyTol);
  if (!(cfg.degeneracyTol > 0)) invalid("system.degeneracy_tol", "expected a positive tolerance");
  try {
    eigendecompose(cfg.system.hamiltonian, cfg.degeneracyTol);
  } catch (const Error&) {
    invalid("system.H_S", "degenerate spectrum");
  }

  const json bath = root.value("bath", json::object());
  rejectUnknown(bath, "bath", {"n", "m", "angular_norm", "phase", "theta0"});
  cfg.bath.n = static_cast<int>(integer(bath, "bath", "n", 1));
  cfg.bath.m = static_cast<int>(integer(bath, "bath", "m", 1));
  cfg.bath.angularNorm = number(bath, "bath", "angular_norm", 1.0);
  cfg.bath.phase = number(bath, "bath", "phase", 0.0);
  cfg.bath.theta0 = number(bath, "bath", "theta0", 1.0);
  if (cfg.bath.n < 0) invalid("bath.n", "unsupported family");
  if (cfg.bath.m != 1 && cfg.bath.m != 2) invalid("bath.m", "unsupported family");
  if (!(cfg.bath.angularNorm > 0)) invalid("bath.angular_norm", "expected a positive value");
  if (!(cfg.bath.theta0 > 0)) invalid("bath.theta0", "expected a positive value");

  const json quad = root.value("quad", json::object());
  rejectUnknown(quad, "quad", {"abs_tol", "rel_tol", "window"});
  cfg.quad.absTol = number(quad, "quad", "abs_tol", 1e-12);
  cfg.quad.relTol = number(quad, "quad", "rel_tol", 1e-10);
  cfg.quad.window = number(quad, "quad", "window", 1.0);
  if (!(cfg.quad.absTol > 0)) invalid("quad.abs_tol", "expected a positive tolerance");
  if (!(cfg.quad.relTol > 0)) invalid("quad.rel_tol", "expected a positive tolerance");
  if (!(cfg.quad.window > 0)) invalid("quad.window", "expected a positive width");

  const json orc = root.value("oracle", json::object());
  rejectUnknown(orc, "oracle", {"N", "fock_cutoff", "scheme", "time_grid", "dim_limit",
                                "cutoff_tol", "rho0"});
  cfg.oracle.modes = static_cast<int>(integer(orc, "oracle", "N", 5));
  cfg.oracle.fockCutoff = static_cast<int>(integer(orc, "oracle", "fock_cutoff", 4));
  cfg.oracle.dimLimit = integer(orc, "oracle", "dim_limit", 4096);
  cfg.oracle.cutoffTol = number(orc, "oracle", "cutoff_tol", 1e-6);
  if (cfg.oracle.modes < 1) invalid("oracle.N", "expected N >= 1");
  if (cfg.oracle.fockCutoff < 2) invalid("oracle.fock_cutoff", "expected at least 2 levels");
  if (cfg.oracle.dimLimit < 2) invalid("oracle.dim_limit", "expected a positive limit");
  if (!(cfg.oracle.cutoffTol > 0)) invalid("oracle.cutoff_tol", "expected a positive tolerance");
  const std::string scheme = orc.value("scheme", std::string("gauss"));
  if (scheme == "gauss")
    cfg.oracle.scheme = DiscretizationScheme::Gauss;
  else if (scheme == "equal_weight")
    cfg.oracle.scheme = DiscretizationScheme::EqualWeight;
  else
    invalid("oracle.scheme", "expected \"gauss\" or \"equal_weight\"");
  if (orc.contains("time_grid")) {
    const json& tg = orc.at("time_grid");
    if (tg.is_array()) {
      cfg.oracle.times = numberList(tg, "oracle.time_grid");
    } else {
      rejectUnknown(tg, "oracle.time_grid", {"t_max", "steps"});
      const double tmax = number(tg, "oracle.time_grid", "t_max", std::nullopt);
      const long steps = integer(tg, "oracle.time_grid", "steps", std::nullopt);
      if (!(tmax > 0) || steps < 1) invalid("oracle.time_grid", "expected t_max > 0 and steps >= 1");
      for (long i = 0; i <= steps; ++i) cfg.oracle.times.push_back(tmax * i / steps);
    }
    for (double t : cfg.oracle.times)
      if (t < 0) invalid("oracle.time_grid", "negative time");
  } else {
    for (int i = 0; i <= 40; ++i) cfg.oracle.times.push_back(0.25 * i);
  }
  if (orc.contains("rho0")) {
    Mat rho = matrix(orc.at("rho0"), "oracle.rho0", d);
    requireHermitian(rho, "oracle.rho0");
    if (std::abs(rho.trace() - 1.0) > 1e-10) invalid("oracle.rho0", "trace must be 1");
    if (minHermitianEigenvalue(rho) < -1e-12) invalid("oracle.rho0", "not positive");
    cfg.oracle.rho0 = rho;
  }

  if (root.contains("sweep")) {
    const json& sw = root.at("sweep");
    rejectUnknown(sw, "sweep", {"lambda"});
    if (sw.contains("lambda")) cfg.sweep = numberList(sw.at("lambda"), "sweep.lambda");
  }

  const json out = root.value("output", json::object());
  rejectUnknown(out, "output", {"directory", "formats"});
  if (out.contains("directory")) {
    if (!out.at("directory").is_string()) invalid("output.directory", "expected a string");
    cfg.output.directory = out.at("directory").get<std::string>();
  }
  if (out.contains("formats")) {
    const json& f = out.at("formats");
    if (!f.is_array()) invalid("output.formats", "expected a list");
    cfg.output.formats.clear();
    for (const auto& e : f) {
      if (!e.is_string() || (e != "json" && e != "csv"))
        invalid("output.formats", "expected \"json\" or \"csv\" entries");
      cfg.output.formats.push_back(e.get<std::string>());
    }
  }

  cfg.canonical = {
      {"system",
       {{"d", d},
        {"H_S", toJson(cfg.system.hamiltonian)},
        {"V_S", toJson(cfg.system.coupling)},
        {"beta", cfg.system.beta},
        {"lambda", cfg.system.lambda},
        {"degeneracy_tol", cfg.degeneracyTol}}},
      {"bath",
       {{"n", cfg.bath.n},
        {"m", cfg.bath.m},
        {"angular_norm", cfg.bath.angularNorm},
        {"phase", cfg.bath.phase},
        {"theta0", cfg.bath.theta0}}},
      {"quad",
       {{"abs_tol", cfg.quad.absTol}, {"rel_tol", cfg.quad.relTol}, {"window", cfg.quad.window}}},
      {"oracle",
       {{"N", cfg.oracle.modes},
        {"fock_cutoff", cfg.oracle.fockCutoff},
        {"scheme", scheme},
        {"time_grid", cfg.oracle.times},
        {"dim_limit", cfg.oracle.dimLimit},
        {"cutoff_tol", cfg.oracle.cutoffTol}}},
      {"sweep", {{"lambda", cfg.sweep}}},
      {"output", {{"directory", cfg.output.directory}, {"formats", cfg.output.formats}}}};
  if (cfg.oracle.rho0) cfg.canonical["oracle"]["rho0"] = toJson(*cfg.oracle.rho0);
  cfg.hash = fnv1a(cfg.canonical.dump());
  return cfg;
}

ExperimentConfig parseConfig(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const long line = 1 + std::count(text.begin(), text.begin() + upto, '\n');
    throw ConfigError(Errc::ParseError, "line " + std::to_string(line), e.what());
  }
  return fromJson(root);
}

ExperimentConfig loadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(Errc::ParseError, path.string(), "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parseConfig(ss.str());
}

}  // namespace qsg::app
