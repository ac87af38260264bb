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

#include "qsg/bath.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qsg/error.hpp"
#include "qsg/quadrature.hpp"

namespace qsg {

namespace {

constexpr double kSupportFloor = 1e-18;

std::vector<double> clipped(std::vector<double> pts, double lo, double hi) {
  std::vector<double> out{lo, hi};
  for (double p : pts)
    if (p > lo && p < hi) out.push_back(p);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

FormFactor familyMember(int n, int m, double angularNorm, double phase,
                        double theta0) {
  FormFactor ff{n, m, angularNorm, phase, theta0};
  validate(ff);
  return ff;
}

void validate(const FormFactor& ff) {
  if (ff.n < 0) throw Error(Errc::UnsupportedFamily, "n must be >= 0");
  if (ff.m != 1 && ff.m != 2)
    throw Error(Errc::UnsupportedFamily, "m must be 1 or 2");
  if (!(ff.angularNorm > 0))
    throw Error(Errc::InvalidArgument, "angular norm must be positive");
  if (!(ff.theta0 > 0))
    throw Error(Errc::InvalidArgument, "theta0 must be positive");
}

FlattenedFormFactor::FlattenedFormFactor(FormFactor ff, double beta)
    : ff_(ff), beta_(beta) {
  validate(ff_);
  if (!(beta > 0)) throw Error(Errc::InvalidArgument, "beta must be positive");
  // The thermal factor is at most max(|u|, 1/beta) + 1/beta.
  auto tail = [&](double r) {
    return (std::max(r, 1.0 / beta_) + 1.0 / beta_) * profile(r);
  };
  const double peak = std::pow((2.0 * ff_.n + 1.0) / (2.0 * ff_.m), 1.0 / ff_.m);
  double r = std::max(peak, 1.0);
  while (tail(r) >= kSupportFloor) r *= 1.05;
  support_ = r;
}

double FlattenedFormFactor::profile(double r) const {
  const double a = std::abs(r);
  return std::pow(a, 2 * ff_.n) * std::exp(-2.0 * std::pow(a, ff_.m));
}

double FlattenedFormFactor::thermalFactor(double u) const {
  const double x = beta_ * u;
  if (std::abs(x) < 1e-300) return 1.0 / beta_;
  return u / -std::expm1(-x);
}

cplx FlattenedFormFactor::amplitude(double u) const {
  const double a = std::abs(u);
  const double radial = std::sqrt(thermalFactor(u)) * std::pow(a, ff_.n) *
                        std::exp(-std::pow(a, ff_.m));
  const cplx angular = std::sqrt(ff_.angularNorm) *
                       std::exp(cplx(0.0, 0.5 * ff_.phase));
  return radial * (u >= 0 ? angular : -std::conj(angular));
}

double FlattenedFormFactor::spectralWeight(double u) const {
  return ff_.angularNorm * thermalFactor(u) * profile(u);
}

double FlattenedFormFactor::logSpectralWeight(double u) const {
  const double a = std::abs(u);
  double logThermal;
  if (beta_ * a < 1e-300)
    logThermal = -std::log(beta_);
  else if (u > 0)
    logThermal = std::log(a) - std::log1p(-std::exp(-beta_ * a));
  else
    logThermal = std::log(a) - beta_ * a - std::log1p(-std::exp(-beta_ * a));
  const double logProfile =
      (ff_.n == 0 ? 0.0 : 2.0 * ff_.n * std::log(a)) - 2.0 * std::pow(a, ff_.m);
  return std::log(ff_.angularNorm) + logThermal + logProfile;
}

double FlattenedFormFactor::crossWeight(double u) const {
  const double x = 0.5 * beta_ * u;
  const double f = std::abs(x) < 1e-300 ? 1.0 / beta_ : u / (2.0 * std::sinh(x));
  return ff_.angularNorm * f * profile(u);
}

double FlattenedFormFactor::totalWeight() const {
  const double pts[] = {-support_, 0.0, support_};
  return integrate([this](double u) { return spectralWeight(u); }, pts, 1e-12,
                   1e-15)
      .value;
}

FlattenedFormFactor flatten(const FormFactor& ff, double beta) {
  return FlattenedFormFactor(ff, beta);
}

CorrelationKernel::CorrelationKernel(FlattenedFormFactor fff,
                                     QuadratureTolerance tol)
    : fff_(std::move(fff)), tol_(tol) {
  if (!(tol_.window > 0))
    throw Error(Errc::InvalidArgument, "quadrature window must be positive");
}

KernelValue CorrelationKernel::evaluate(double omega) const {
  if (!std::isfinite(omega))
    throw Error(Errc::KernelEvaluationFailure, "non-finite frequency");
  const double R = fff_.supportRadius();
  const double w = tol_.window;
  const double jw = fff_.spectralWeight(omega);
  auto outer = [&](double u) { return fff_.spectralWeight(u) / (u - omega); };
  auto inner = [&](double s) {
    return (fff_.spectralWeight(omega + s) - jw) / s;
  };

  Integral total;
  auto add = [&](const Integral& part) {
    total.value += part.value;
    total.error += part.error;
  };
  try {
    // Outside the window, restricted to the support.
    const double lo = omega - w, hi = omega + w;
    if (-R < lo) {
      auto pts = clipped({0.0}, -R, std::min(lo, R));
      add(integrate(outer, pts, tol_.relTol, tol_.absTol));
    }
    if (hi < R) {
      auto pts = clipped({0.0}, std::max(hi, -R), R);
      add(integrate(outer, pts, tol_.relTol, tol_.absTol));
    }
    // Inside the window the constant J(w)/s integrates to zero.
    const double a = std::max(-w, -R - omega), b = std::min(w, R - omega);
    if (a < b) {
      auto pts = clipped({0.0, -omega}, a, b);
      add(integrate(inner, pts, tol_.relTol, tol_.absTol));
    }
    // The part of the window that falls outside the support still carries
    // -J(w)/s from the subtraction.
    if (a < b) {
      if (a > -w) total.value -= jw * std::log(std::abs(a) / w);
      if (b < w) total.value -= jw * std::log(w / std::abs(b));
    }
  } catch (const Error& e) {
    std::ostringstream os;
    os << "h(" << omega << "): " << e.what();
    throw Error(Errc::QuadratureFailure, os.str());
  }
  return {cplx(total.value, -M_PI * jw), total.error};
}

cplx CorrelationKernel::regularized(double omega, double eps) const {
  if (!(eps > 0)) throw Error(Errc::InvalidArgument, "eps must be positive");
  const double R = fff_.supportRadius();
  std::vector<double> pts{0.0};
  for (double k : {1.0, 5.0, 25.0, 125.0}) {
    pts.push_back(omega - k * eps);
    pts.push_back(omega + k * eps);
  }
  pts.push_back(omega);
  pts = clipped(pts, -R, R);
  auto den = [&](double u) { return (u - omega) * (u - omega) + eps * eps; };
  const double re = integrate(
      [&](double u) { return fff_.spectralWeight(u) * (u - omega) / den(u); },
      pts, tol_.relTol, tol_.absTol).value;
  const double im = integrate(
      [&](double u) { return fff_.spectralWeight(u) * eps / den(u); }, pts,
      tol_.relTol, tol_.absTol).value;
  return {re, -im};
}

CorrelationKernel correlationKernel(const FlattenedFormFactor& fff,
                                    QuadratureTolerance tol) {
  return CorrelationKernel(fff, tol);
}

cplx richardsonHalving(const std::vector<cplx>& values) {
  if (values.empty()) throw Error(Errc::InvalidArgument, "no values");
  std::vector<cplx> t = values;
  for (std::size_t level = 1; level < t.size(); ++level) {
    const double f = std::ldexp(1.0, static_cast<int>(level));
    for (std::size_t i = t.size() - 1; i >= level; --i)
      t[i] = (f * t[i] - t[i - 1]) / (f - 1.0);
  }
  return t.back();
}

}  // namespace qsg
