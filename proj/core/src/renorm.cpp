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

#include "qsg/renorm.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "qsg/error.hpp"
#include "qsg/quadrature.hpp"

namespace qsg {

namespace {

constexpr double kExpClamp = 700.0;

double clampedExp(double x) { return std::exp(std::min(x, kExpClamp)); }

// int_0^beta ds exp(logWeight + s x) (e^{s y} - 1) / y: the ordered double
// imaginary-time integral of one two-point term.
double orderedTimeIntegral(double logWeight, double x, double y, double beta) {
  if (!std::isfinite(logWeight)) return 0.0;
  const double scale = beta * std::max({std::abs(x), std::abs(x + y), 1.0});
  const int panels = std::clamp(static_cast<int>(std::ceil(scale / 8.0)), 4, 64);
  auto integrand = [&](double s) {
    const double sy = s * y;
    if (y == 0.0) return clampedExp(logWeight + s * x) * s;
    if (sy > 0)
      return clampedExp(logWeight + s * (x + y)) * -std::expm1(-sy) / y;
    return clampedExp(logWeight + s * x) * std::expm1(sy) / y;
  };
  return gaussLegendre(integrand, 0.0, beta, panels);
}

using MeasureIntegral = std::function<double(const std::function<double(double, double)>&)>;

GibbsExpansion expand(const SystemSpec& spec, const EigenSystem& eig,
                      const MeasureIntegral& measure) {
  const Eigen::Index d = eig.dim();
  const Mat v = eig.toEigenbasis(spec.coupling);
  const RVec& E = eig.energies;
  Mat M = Mat::Zero(d, d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b)
      for (Eigen::Index c = 0; c < d; ++c) {
        const cplx coef = v(a, b) * v(b, c);
        if (std::abs(coef) == 0.0) continue;
        const double x0 = E(a) - E(b), y0 = E(b) - E(c);
        const double value = measure([&](double logWeight, double u) {
          return orderedTimeIntegral(logWeight, x0 - u, y0 + u, spec.beta);
        });
        M(a, c) += 0.5 * coef * value;
      }

  RVec w(d);
  for (Eigen::Index a = 0; a < d; ++a) w(a) = std::exp(-spec.beta * (E(a) - E(0)));
  w /= w.sum();
  const Mat rho0 = w.cast<cplx>().asDiagonal();
  const Mat raw = hermitianPart(rho0 * M);
  const Mat second = raw - rho0 * raw.trace();

  GibbsExpansion out;
  out.zeroth = eig.fromEigenbasis(rho0);
  out.first = Mat::Zero(d, d);
  out.second = eig.fromEigenbasis(second);
  out.correction = M;
  return out;
}

}  // namespace

GibbsExpansion gibbsExpansion(const SystemSpec& spec, const EigenSystem& eig,
                              const FlattenedFormFactor& fff,
                              const QuadratureTolerance& tol) {
  const double R = fff.supportRadius();
  const double pts[] = {-R, 0.0, R};
  return expand(spec, eig, [&](const std::function<double(double, double)>& f) {
    return integrate([&](double u) { return f(fff.logSpectralWeight(u), u); },
                     pts, tol.relTol, tol.absTol)
        .value;
  });
}

GibbsExpansion gibbsExpansion(const SystemSpec& spec, const EigenSystem& eig,
                              const DiscreteModes& modes) {
  if (modes.frequencies.size() != modes.couplingsSquared.size())
    throw Error(Errc::InvalidArgument, "mode arrays differ in length");
  return expand(spec, eig, [&](const std::function<double(double, double)>& f) {
    double sum = 0.0;
    for (std::size_t k = 0; k < modes.frequencies.size(); ++k) {
      const double w = modes.frequencies[k];
      const double g2 = modes.couplingsSquared[k];
      if (g2 == 0.0) continue;
      const double occupation = 1.0 / std::expm1(spec.beta * w);
      sum += f(std::log(g2 * (1.0 + occupation)), w);
      sum += f(std::log(g2 * occupation), -w);
    }
    return sum;
  });
}

Mat reducedGibbsPerturbative(const SystemSpec& spec, const EigenSystem& eig,
                             const GibbsExpansion& expansion,
                             const PerturbativeOptions& opts) {
  if (std::abs(spec.lambda) > opts.lambdaRadius) {
    std::ostringstream os;
    os << "|lambda| = " << std::abs(spec.lambda) << " exceeds the radius "
       << opts.lambdaRadius;
    throw Error(Errc::InvalidArgument, os.str());
  }
  const Eigen::Index d = eig.dim();
  RVec w(d);
  for (Eigen::Index a = 0; a < d; ++a)
    w(a) = std::exp(-spec.beta * (eig.energies(a) - eig.energies(0)));
  const Mat weights = w.cast<cplx>().asDiagonal();
  const Mat one = Mat::Identity(d, d);
  Mat rho = hermitianPart(weights *
                          (one + spec.lambda * spec.lambda * expansion.correction));
  rho /= rho.trace().real();
  const double minEig = minHermitianEigenvalue(rho);
  if (!(minEig > 0)) {
    std::ostringstream os;
    os << "second-order state has eigenvalue " << minEig;
    throw Error(Errc::NotPositive, os.str());
  }
  return hermitianPart(eig.fromEigenbasis(rho));
}

Mat reducedGibbsPerturbative(const SystemSpec& spec,
                             const FlattenedFormFactor& fff,
                             const CorrelationKernel& kernel,
                             const PerturbativeOptions& opts) {
  const auto eig = eigendecompose(spec);
  return reducedGibbsPerturbative(
      spec, eig, gibbsExpansion(spec, eig, fff, kernel.tolerance()), opts);
}

RenormalizedHamiltonian renormalizedHamiltonian(const Mat& rho, double beta,
                                                double degeneracyRelTol) {
  if (!(beta > 0)) throw Error(Errc::InvalidArgument, "beta must be positive");
  Eigen::SelfAdjointEigenSolver<Mat> solver(hermitianPart(rho));
  const RVec p = solver.eigenvalues();
  const Eigen::Index d = p.size();
  if (p(0) < 1e-14) {
    std::ostringstream os;
    os << "state eigenvalue " << p(0) << " below 1e-14";
    throw Error(Errc::SingularState, os.str());
  }
  RenormalizedHamiltonian out;
  out.Ztilde = 1.0 / p(d - 1);
  out.eigen.energies.resize(d);
  out.eigen.vectors.resize(d, d);
  for (Eigen::Index n = 0; n < d; ++n) {
    const Eigen::Index src = d - 1 - n;  // descending weight, ascending energy
    out.eigen.energies(n) = n == 0 ? 0.0 : -std::log(p(src) * out.Ztilde) / beta;
    Vec col = solver.eigenvectors().col(src);
    Eigen::Index big = 0;
    col.cwiseAbs().maxCoeff(&big);
    col *= std::conj(col(big)) / std::abs(col(big));
    out.eigen.vectors.col(n) = col;
  }
  const double scale = std::max(out.eigen.energies(d - 1), 1e-300);
  for (Eigen::Index n = 1; n < d; ++n)
    if (out.eigen.energies(n) - out.eigen.energies(n - 1) <=
        degeneracyRelTol * scale)
      throw Error(Errc::DegenerateSpectrum, "renormalized levels coincide");
  out.Htilde = hermitianPart(
      out.eigen.fromEigenbasis(out.eigen.energies.cast<cplx>().asDiagonal()));
  return out;
}

std::vector<Eigen::Index> pairEigenvectors(const Mat& original, const Mat& tilde) {
  const Eigen::Index d = original.cols();
  const RMat overlap = (original.adjoint() * tilde).cwiseAbs();
  std::vector<Eigen::Index> match(d, -1);
  std::vector<bool> used(d, false);
  for (Eigen::Index step = 0; step < d; ++step) {
    double best = -1.0;
    Eigen::Index bi = 0, bj = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
      if (match[i] >= 0) continue;
      for (Eigen::Index j = 0; j < d; ++j)
        if (!used[j] && overlap(i, j) > best) {
          best = overlap(i, j);
          bi = i;
          bj = j;
        }
    }
    match[bi] = bj;
    used[bj] = true;
  }
  return match;
}

std::pair<DoubledOperator, Vec> renormalizedDoubledData(
    const RVec& energiesTilde, const Mat& coefficients, double beta) {
  const Eigen::Index d = energiesTilde.size();
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j)
      if (std::abs(energiesTilde(i) - energiesTilde(j)) <=
          kDefaultDegeneracyTol * std::max(energiesTilde.cwiseAbs().maxCoeff(), 1e-300))
        throw Error(Errc::DegenerateSpectrum, "renormalized levels coincide");
  const Mat h = coefficients * energiesTilde.cast<cplx>().asDiagonal() *
                coefficients.adjoint();
  const Mat one = Mat::Identity(d, d);
  DoubledOperator ls{d, kron(h, one) - kron(one, h.conjugate())};

  const double emin = energiesTilde.minCoeff();
  RVec w(d);
  for (Eigen::Index n = 0; n < d; ++n)
    w(n) = std::exp(-beta * (energiesTilde(n) - emin));
  w /= w.sum();
  Mat root = Mat::Zero(d, d);
  for (Eigen::Index n = 0; n < d; ++n)
    root += std::sqrt(w(n)) * coefficients.col(n) * coefficients.col(n).adjoint();
  return {ls, vecRows(root)};
}

LevelShift renormalizedLevelShift(const RenormalizedSystem& partial,
                                  const SystemSpec& spec, const EigenSystem& eig,
                                  const CorrelationKernel& kernel,
                                  A1Policy policy) {
  BohrPartition part = bohrProjections(eig);
  if (part.hasAccidental())
    throw Error(Errc::AccidentalDegeneracy,
                "distinct level pairs share a Bohr frequency");
  const Eigen::Index d = eig.dim();
  const RVec& Et = partial.eigen.energies;
  const Mat shifted =
      spec.hamiltonian - eig.energies(0) * Mat::Identity(d, d);
  const double drift = operatorNorm(partial.Htilde - shifted);
  const double tol = std::max(10.0 * drift, part.tolerance);

  std::vector<double> freqs;
  for (auto& block : part.blocks) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
    for (auto [m, n] : block.pairs) {
      const double e = Et(m) - Et(n);
      lo = std::min(lo, e);
      hi = std::max(hi, e);
      sum += e;
    }
    if (hi - lo > tol)
      throw Error(Errc::AmbiguousClustering,
                  "renormalized Bohr block spreads beyond tolerance");
    block.frequency = sum / block.pairs.size();
    freqs.push_back(block.frequency);
  }
  std::sort(freqs.begin(), freqs.end());
  for (std::size_t i = 1; i < freqs.size(); ++i)
    if (freqs[i] - freqs[i - 1] <= tol)
      throw Error(Errc::AmbiguousClustering,
                  "renormalized Bohr frequencies merge");
  part.tolerance = tol;

  const Mat& C = partial.coefficients;
  const Mat v = C.adjoint() * eig.toEigenbasis(spec.coupling) * C;
  std::vector<Mat> blocks;
  for (const auto& b : part.blocks)
    blocks.push_back(levelShiftBlock(b, Et, v, kernel));
  return assembleAndDecompose(std::move(part), std::move(blocks),
                              kron(C, C.conjugate()), policy);
}

RenormalizedSystem renormalize(const SystemSpec& spec, const EigenSystem& eig,
                               const Mat& rho, const CorrelationKernel& kernel,
                               StateSource source, A1Policy policy) {
  const auto rh = renormalizedHamiltonian(rho, spec.beta);
  const Eigen::Index d = eig.dim();
  const auto match = pairEigenvectors(eig.vectors, rh.eigen.vectors);

  RenormalizedSystem rs;
  rs.source = source;
  rs.lambda = spec.lambda;
  rs.rho = hermitianPart(rho);
  rs.Ztilde = rh.Ztilde;
  rs.Htilde = rh.Htilde;
  rs.eigen.energies.resize(d);
  rs.eigen.vectors.resize(d, d);
  for (Eigen::Index n = 0; n < d; ++n) {
    Vec col = rh.eigen.vectors.col(match[n]);
    const cplx overlap = eig.vectors.col(n).dot(col);
    if (std::abs(overlap) > 0) col *= std::conj(overlap) / std::abs(overlap);
    rs.eigen.vectors.col(n) = col;
    rs.eigen.energies(n) = rh.eigen.energies(match[n]);
  }
  rs.coefficients = eig.vectors.adjoint() * rs.eigen.vectors;
  auto [ls, omega] = renormalizedDoubledData(rs.eigen.energies, rs.coefficients,
                                             spec.beta);
  rs.LStilde = std::move(ls);
  rs.OmegaTilde = std::move(omega);
  rs.rootTilde = unvecRows(rs.OmegaTilde, d);
  rs.LambdaTilde = renormalizedLevelShift(rs, spec, eig, kernel, policy);
  return rs;
}

RenormalizationShift renormalizationShift(const SystemSpec& spec,
                                          const EigenSystem& eig,
                                          const LevelShift& lambda,
                                          const RenormalizedSystem& rs) {
  const Eigen::Index d = eig.dim();
  RenormalizationShift out;
  out.hamiltonian = operatorNorm(
      rs.Htilde - (spec.hamiltonian - eig.energies(0) * Mat::Identity(d, d)));
  for (Eigen::Index n = 0; n < d; ++n)
    out.eigenvectors = std::max(
        out.eigenvectors, (eig.vectors.col(n) - rs.eigen.vectors.col(n)).norm());
  out.levelShift = operatorNorm(lambda.full - rs.LambdaTilde.full);

  const auto& tildeTerms = rs.LambdaTilde.spectrum;
  std::vector<bool> used(tildeTerms.size(), false);
  for (const auto& term : lambda.spectrum) {
    std::size_t best = tildeTerms.size();
    for (std::size_t j = 0; j < tildeTerms.size(); ++j)
      if (!used[j] && tildeTerms[j].block == term.block &&
          (best == tildeTerms.size() ||
           std::abs(tildeTerms[j].eigenvalue - term.eigenvalue) <
               std::abs(tildeTerms[best].eigenvalue - term.eigenvalue)))
        best = j;
    if (best == tildeTerms.size()) continue;
    used[best] = true;
    out.eigenvalues = std::max(
        out.eigenvalues, std::abs(tildeTerms[best].eigenvalue - term.eigenvalue));
    out.projections = std::max(
        out.projections, operatorNorm(tildeTerms[best].projection - term.projection));
  }
  const double norm = rs.LambdaTilde.norm;
  out.kernelResidual =
      norm > 0 ? (rs.LambdaTilde.full * rs.OmegaTilde).norm() / norm : 0.0;
  return out;
}

}  // namespace qsg
