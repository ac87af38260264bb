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

#include "qsg/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qsg/error.hpp"
#include "qsg/quadrature.hpp"

namespace qsg {

namespace {

double radialWeight(const FormFactor& ff, double r) {
  return ff.angularNorm * std::pow(r, 2 * ff.n + 1) *
         std::exp(-2.0 * std::pow(r, ff.m));
}

// Composite Gauss-Legendre grid on [0, R] carrying the radial weight.
void fineGrid(const FormFactor& ff, std::vector<double>& x, std::vector<double>& w) {
  double R = 1.0;
  while (radialWeight(ff, R) * std::max(R, 1.0) > 1e-20 || R < 2.0) R *= 1.05;
  constexpr int kPanels = 400;
  static const double nodes[] = {-0.9324695142031521, -0.6612093864662645,
                                 -0.2386191860831969, 0.2386191860831969,
                                 0.6612093864662645, 0.9324695142031521};
  static const double weights[] = {0.1713244923791704, 0.3607615730481386,
                                   0.4679139345726910, 0.4679139345726910,
                                   0.3607615730481386, 0.1713244923791704};
  const double h = R / kPanels;
  for (int p = 0; p < kPanels; ++p)
    for (int q = 0; q < 6; ++q) {
      const double r = h * (p + 0.5 * (nodes[q] + 1.0));
      x.push_back(r);
      w.push_back(0.5 * h * weights[q] * radialWeight(ff, r));
    }
}

}  // namespace

DiscreteModes BathDiscretization::measure() const {
  DiscreteModes m;
  m.frequencies = frequencies;
  for (double g : couplings) m.couplingsSquared.push_back(g * g);
  return m;
}

double BathDiscretization::recurrenceTime() const {
  std::vector<double> f = frequencies;
  std::sort(f.begin(), f.end());
  if (f.size() < 2) return std::numeric_limits<double>::infinity();
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < f.size(); ++i) gap = std::min(gap, f[i] - f[i - 1]);
  return 2.0 * M_PI / gap;
}

double radialMoment(const FormFactor& ff, int k) {
  const double a = k + 2.0 * ff.n + 1.0;
  return ff.angularNorm * std::tgamma((a + 1.0) / ff.m) /
         (ff.m * std::pow(2.0, (a + 1.0) / ff.m));
}

BathDiscretization discretizeBath(const FormFactor& ff, int modes,
                                  DiscretizationScheme scheme, int fockCutoff) {
  validate(ff);
  if (modes < 1) throw Error(Errc::InvalidArgument, "need at least one mode");
  if (fockCutoff < 2) throw Error(Errc::InvalidArgument, "Fock cutoff below 2");
  std::vector<double> x, w;
  fineGrid(ff, x, w);
  const double mass = std::accumulate(w.begin(), w.end(), 0.0);

  BathDiscretization bd;
  bd.fockCutoff = fockCutoff;
  bd.scheme = scheme;
  if (scheme == DiscretizationScheme::Gauss) {
    // Lanczos on multiplication by r in the weighted inner product.
    const Eigen::Index M = static_cast<Eigen::Index>(x.size());
    const RVec xs = Eigen::Map<const RVec>(x.data(), M);
    RMat Q = RMat::Zero(M, modes);
    RVec q = Eigen::Map<const RVec>(w.data(), M).cwiseSqrt() / std::sqrt(mass);
    RMat T = RMat::Zero(modes, modes);
    double prevBeta = 0.0;
    RVec prev = RVec::Zero(M);
    for (int k = 0; k < modes; ++k) {
      Q.col(k) = q;
      RVec z = xs.cwiseProduct(q);
      const double alpha = q.dot(z);
      T(k, k) = alpha;
      z -= alpha * q + prevBeta * prev;
      for (int j = 0; j <= k; ++j) z -= Q.col(j).dot(z) * Q.col(j);
      const double b = z.norm();
      if (k + 1 < modes) {
        if (b < 1e-14) throw Error(Errc::QuadratureFailure, "Lanczos breakdown");
        T(k, k + 1) = T(k + 1, k) = b;
      }
      prev = q;
      q = z / b;
      prevBeta = b;
    }
    Eigen::SelfAdjointEigenSolver<RMat> solver(T);
    for (int k = 0; k < modes; ++k) {
      const double v0 = solver.eigenvectors()(0, k);
      bd.frequencies.push_back(solver.eigenvalues()(k));
      bd.couplings.push_back(std::sqrt(mass * v0 * v0));
    }
  } else {
    const double cell = mass / modes;
    double acc = 0.0, m0 = 0.0, m1 = 0.0;
    int filled = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      m0 += w[i];
      m1 += w[i] * x[i];
      acc += w[i];
      const bool last = i + 1 == x.size();
      if ((acc >= cell * (filled + 1) && filled + 1 < modes) || last) {
        bd.frequencies.push_back(m1 / m0);
        bd.couplings.push_back(std::sqrt(m0));
        m0 = m1 = 0.0;
        ++filled;
      }
    }
  }
  return bd;
}

FiniteBathModel::FiniteBathModel(const SystemSpec& spec, BathDiscretization bath,
                                 OracleLimits limits)
    : spec_(spec), bath_(std::move(bath)), limits_(limits) {
  validate(spec_);
  double modesDim = 1.0;
  for (int k = 0; k < bath_.modes(); ++k) modesDim *= bath_.fockCutoff;
  const double total = modesDim * spec_.dim();
  if (total > static_cast<double>(limits_.dimLimit)) {
    std::ostringstream os;
    os << "oracle dimension " << total << " exceeds the limit " << limits_.dimLimit;
    throw Error(Errc::DimensionLimit, os.str());
  }
  bathDim_ = static_cast<long>(modesDim);
  dim_ = static_cast<long>(total);
  real_ = spec_.hamiltonian.imag().cwiseAbs().maxCoeff() == 0.0 &&
          spec_.coupling.imag().cwiseAbs().maxCoeff() == 0.0;
}

Mat FiniteBathModel::hamiltonian() const {
  const Eigen::Index d = spec_.dim();
  const int N = bath_.modes();
  const int n = bath_.fockCutoff;
  const long B = bathDim_;
  RVec energy = RVec::Zero(B);
  RMat field = RMat::Zero(B, B);
  long stride = B;
  for (int k = 0; k < N; ++k) {
    stride /= n;
    for (long s = 0; s < B; ++s) {
      const int level = static_cast<int>((s / stride) % n);
      energy(s) += bath_.frequencies[k] * level;
      if (level + 1 < n) {
        const double amp = bath_.couplings[k] * std::sqrt(level + 1.0) / std::sqrt(2.0);
        field(s + stride, s) += amp;
        field(s, s + stride) += amp;
      }
    }
  }
  Mat h = Mat::Zero(dim_, dim_);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      auto blk = h.block(i * B, j * B, B, B);
      blk += spec_.lambda * spec_.coupling(i, j) * field.cast<cplx>();
      if (spec_.hamiltonian(i, j) != 0.0)
        blk.diagonal().array() += spec_.hamiltonian(i, j);
      if (i == j) blk.diagonal() += energy.cast<cplx>();
    }
  return h;
}

RVec FiniteBathModel::bathGibbsPopulations() const {
  const int N = bath_.modes();
  const int n = bath_.fockCutoff;
  RVec p = RVec::Ones(bathDim_);
  long stride = bathDim_;
  for (int k = 0; k < N; ++k) {
    stride /= n;
    double z = 0.0;
    for (int l = 0; l < n; ++l) z += std::exp(-spec_.beta * bath_.frequencies[k] * l);
    for (long s = 0; s < bathDim_; ++s) {
      const int level = static_cast<int>((s / stride) % n);
      p(s) *= std::exp(-spec_.beta * bath_.frequencies[k] * level) / z;
    }
  }
  return p;
}

double FiniteBathModel::topPopulation(const RVec& diagonal) const {
  const int n = bath_.fockCutoff;
  double worst = 0.0;
  long stride = bathDim_;
  for (int k = 0; k < bath_.modes(); ++k) {
    stride /= n;
    double top = 0.0;
    for (long s = 0; s < dim_; ++s)
      if (((s % bathDim_) / stride) % n == n - 1) top += diagonal(s);
    worst = std::max(worst, top);
  }
  return worst;
}

namespace {

struct Spectrum {
  RVec energies;
  Mat vectors;
  RMat realVectors;  // filled when the Hamiltonian is real

  bool real() const { return realVectors.size() > 0; }
  // U_rows(i)^T conj(U_rows(j)) for the row blocks of two system indices.
  Mat blockProduct(Eigen::Index i, Eigen::Index j, long B) const {
    if (real())
      return (realVectors.middleRows(i * B, B).transpose() *
              realVectors.middleRows(j * B, B))
          .cast<cplx>();
    return vectors.middleRows(i * B, B).transpose() *
           vectors.middleRows(j * B, B).conjugate();
  }
  // U^dagger X.
  Mat adjointTimes(const Mat& x) const {
    if (real()) {
      const RMat ut = realVectors.transpose();
      Mat out = (ut * x.real()).cast<cplx>();
      out.imag() = ut * x.imag();
      return out;
    }
    return vectors.adjoint() * x;
  }
};

Spectrum diagonalize(const FiniteBathModel& model) {
  const Mat h = model.hamiltonian();
  Spectrum s;
  if (model.isReal()) {
    Eigen::SelfAdjointEigenSolver<RMat> solver(h.real());
    s.energies = solver.eigenvalues();
    s.realVectors = solver.eigenvectors();
    s.vectors = s.realVectors.cast<cplx>();
  } else {
    Eigen::SelfAdjointEigenSolver<Mat> solver(h);
    s.energies = solver.eigenvalues();
    s.vectors = solver.eigenvectors();
  }
  return s;
}

RVec gibbsWeights(const RVec& energies, double beta) {
  RVec p = (-beta * (energies.array() - energies.minCoeff())).exp().matrix();
  return p / p.sum();
}

Mat reduceGibbs(const Spectrum& s, const RVec& p, Eigen::Index d, long B) {
  Mat rho(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      const auto ui = s.vectors.middleRows(i * B, B);
      const auto uj = s.vectors.middleRows(j * B, B);
      rho(i, j) = (ui.cwiseProduct(uj.conjugate()).colwise().sum().transpose()
                       .cwiseProduct(p.cast<cplx>())).sum();
    }
  return hermitianPart(rho);
}

void checkCutoff(double top, double tol, const char* where) {
  if (top > tol) {
    std::ostringstream os;
    os << where << ": top Fock level population " << top << " exceeds " << tol;
    throw Error(Errc::CutoffNonConvergence, os.str());
  }
}

}  // namespace

OracleRun exactReducedDynamics(const SystemSpec& spec, const BathDiscretization& bd,
                               const Mat& rho0, const std::vector<double>& times,
                               const OracleLimits& limits) {
  const FiniteBathModel model(spec, bd, limits);
  const Eigen::Index d = spec.dim();
  const long B = model.bathDim();
  const long D = model.dim();
  if (rho0.rows() != d || rho0.cols() != d)
    throw Error(Errc::InvalidArgument, "initial state has the wrong dimension");

  const RVec pb = model.bathGibbsPopulations();
  RVec initialDiag(D);
  for (Eigen::Index i = 0; i < d; ++i)
    initialDiag.segment(i * B, B) = rho0(i, i).real() * pb;
  OracleRun run;
  run.times = times;
  run.recurrenceTime = bd.recurrenceTime();
  run.topPopulation = model.topPopulation(pb.replicate(d, 1) / double(d));
  checkCutoff(run.topPopulation, limits.cutoffTol, "bath state");

  const Spectrum s = diagonalize(model);
  const RVec p = gibbsWeights(s.energies, spec.beta);
  run.reducedGibbs = reduceGibbs(s, p, d, B);
  const RVec gibbsDiag = s.vectors.cwiseAbs2() * p;
  run.topPopulation = std::max(run.topPopulation, model.topPopulation(gibbsDiag));
  checkCutoff(run.topPopulation, limits.cutoffTol, "coupled Gibbs state");

  // rho~ = U^dagger (rho0 ⊗ rho_R) U in the energy basis.
  Mat rhoU(D, D);
  for (Eigen::Index i = 0; i < d; ++i) {
    Mat acc = Mat::Zero(B, D);
    for (Eigen::Index j = 0; j < d; ++j)
      if (rho0(i, j) != 0.0) acc += rho0(i, j) * s.vectors.middleRows(j * B, B);
    rhoU.middleRows(i * B, B) = pb.cast<cplx>().asDiagonal() * acc;
  }
  const Mat rhoE = s.adjointTimes(rhoU);
  rhoU.resize(0, 0);

  std::vector<std::pair<Eigen::Index, Eigen::Index>> entries;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i; j < d; ++j) entries.emplace_back(i, j);
  std::vector<Mat> weights;
  for (auto [i, j] : entries) {
    weights.push_back(rhoE.cwiseProduct(s.blockProduct(i, j, B)));
  }

  for (double t : times) {
    const Vec x = (-kI * t * s.energies.cast<cplx>().array()).exp().matrix();
    const Vec y = x.conjugate();
    Mat rho(d, d);
    for (std::size_t e = 0; e < entries.size(); ++e) {
      const auto [i, j] = entries[e];
      const cplx v = x.transpose() * (weights[e] * y);
      rho(i, j) = v;
      rho(j, i) = std::conj(v);
    }
    rho /= rho.trace().real();
    run.reducedStates.push_back(hermitianPart(rho));
  }
  return run;
}

Mat exactReducedGibbs(const SystemSpec& spec, const BathDiscretization& bd,
                      const OracleLimits& limits) {
  const FiniteBathModel model(spec, bd, limits);
  const Spectrum s = diagonalize(model);
  const RVec p = gibbsWeights(s.energies, spec.beta);
  const RVec diag = s.vectors.cwiseAbs2() * p;
  checkCutoff(model.topPopulation(diag), limits.cutoffTol, "coupled Gibbs state");
  return reduceGibbs(s, p, spec.dim(), model.bathDim());
}

cplx dephasingFactor(const BathDiscretization& bd, double lambda, double beta,
                     double t) {
  const int n = bd.fockCutoff;
  cplx total = 1.0;
  for (int k = 0; k < bd.modes(); ++k) {
    Mat h0 = Mat::Zero(n, n), f = Mat::Zero(n, n);
    for (int l = 0; l < n; ++l) {
      h0(l, l) = bd.frequencies[k] * l;
      if (l + 1 < n) f(l + 1, l) = f(l, l + 1) = std::sqrt((l + 1) / 2.0) * bd.couplings[k];
    }
    Mat rho = Mat::Zero(n, n);
    for (int l = 0; l < n; ++l) rho(l, l) = std::exp(-beta * bd.frequencies[k] * l);
    rho /= rho.trace();
    const Mat plus = expm(-kI * t * (h0 + lambda * f));
    const Mat minus = expm(kI * t * (h0 - lambda * f));
    total *= (plus * rho * minus).trace();
  }
  return total;
}

cplx dephasingFactorUntruncated(const BathDiscretization& bd, double lambda,
                                double beta, double t) {
  double exponent = 0.0;
  for (int k = 0; k < bd.modes(); ++k) {
    const double w = bd.frequencies[k];
    const double c = lambda * bd.couplings[k] / std::sqrt(2.0);
    exponent += 4.0 * c * c * (1.0 - std::cos(w * t)) / (w * w * std::tanh(0.5 * beta * w));
  }
  return std::exp(-exponent);
}

BoundFit errorBoundFit(const std::vector<double>& times,
                       const std::vector<double>& errTau,
                       const std::vector<double>& errSigma, double lambda,
                       double recurrenceTime) {
  if (times.size() != errTau.size() || times.size() != errSigma.size())
    throw Error(Errc::InvalidArgument, "time and error grids differ");
  const double end = 0.5 * recurrenceTime;
  std::size_t peak = times.size();
  for (std::size_t i = 0; i < times.size(); ++i)
    if (times[i] <= end && (peak == times.size() || errTau[i] > errTau[peak])) peak = i;
  if (peak == times.size()) throw Error(Errc::FitWindowEmpty, "no times before the cutoff");

  std::vector<double> ts, ys, sig, tau;
  for (std::size_t i = peak; i < times.size() && times[i] <= end; ++i) {
    if (!(errTau[i] > 0)) continue;
    ts.push_back(times[i]);
    ys.push_back(std::log(errTau[i]) - std::log1p(lambda * lambda * times[i]));
    sig.push_back(errSigma[i]);
    tau.push_back(errTau[i]);
  }
  if (ts.size() < 3) throw Error(Errc::FitWindowEmpty, "fewer than 3 points in window");

  const double n = static_cast<double>(ts.size());
  const double mt = std::accumulate(ts.begin(), ts.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    sxx += (ts[i] - mt) * (ts[i] - mt);
    sxy += (ts[i] - mt) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mt;
  double rss = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double r = ys[i] - (intercept + slope * ts[i]);
    rss += r * r;
  }

  BoundFit fit;
  fit.prefactor = std::exp(intercept);
  fit.decayRate = -slope;
  fit.windowStart = ts.front();
  fit.windowEnd = ts.back();
  fit.residual = std::sqrt(rss / n);
  fit.points = static_cast<int>(ts.size());
  fit.supTau = *std::max_element(tau.begin(), tau.end());
  const std::size_t q = ts.size() - std::max<std::size_t>(1, ts.size() / 4);
  double ls = 0.0, lt = 0.0;
  for (std::size_t i = q; i < ts.size(); ++i) {
    ls += sig[i];
    lt += tau[i];
  }
  fit.lateSigma = ls / (ts.size() - q);
  fit.lateTau = lt / (ts.size() - q);
  return fit;
}

}  // namespace qsg
