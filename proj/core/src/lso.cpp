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

#include "qsg/lso.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

#include "qsg/error.hpp"

namespace qsg {

bool BohrPartition::hasAccidental() const {
  return std::any_of(blocks.begin(), blocks.end(),
                     [](const BohrBlock& b) { return b.accidental; });
}

std::size_t BohrPartition::zeroBlock() const {
  for (std::size_t b = 0; b < blocks.size(); ++b)
    if (blocks[b].pairs.front().first == blocks[b].pairs.front().second)
      return b;
  throw Error(Errc::InvalidArgument, "partition without a zero block");
}

BohrPartition bohrProjections(const RVec& energies, double tol) {
  const Eigen::Index d = energies.size();
  std::vector<std::tuple<double, Eigen::Index, Eigen::Index>> diffs;
  for (Eigen::Index m = 0; m < d; ++m)
    for (Eigen::Index n = 0; n < d; ++n)
      diffs.emplace_back(m == n ? 0.0 : energies(m) - energies(n), m, n);
  std::stable_sort(diffs.begin(), diffs.end(), [](const auto& a, const auto& b) {
    return std::get<0>(a) < std::get<0>(b);
  });

  BohrPartition part;
  part.d = d;
  part.tolerance = tol;
  double last = 0.0;
  for (const auto& [e, m, n] : diffs) {
    if (part.blocks.empty() || e - last > tol) {
      if (!part.blocks.empty() && e - last < 10.0 * tol) {
        std::ostringstream os;
        os << "Bohr frequencies " << last << " and " << e
           << " are neither separated nor identified at tolerance " << tol;
        throw Error(Errc::AmbiguousClustering, os.str());
      }
      part.blocks.push_back({});
    }
    part.blocks.back().pairs.emplace_back(m, n);
    last = e;
  }
  for (auto& block : part.blocks) {
    double sum = 0.0;
    bool diagonal = false, offDiagonal = false;
    for (auto [m, n] : block.pairs) {
      sum += energies(m) - energies(n);
      (m == n ? diagonal : offDiagonal) = true;
    }
    if (diagonal && offDiagonal)
      throw Error(Errc::DegenerateSpectrum,
                  "a nonzero Bohr frequency clusters with zero");
    block.frequency = diagonal ? 0.0 : sum / block.pairs.size();
    block.accidental = !diagonal && block.pairs.size() > 1;
  }
  return part;
}

BohrPartition bohrProjections(const EigenSystem& eig, double degeneracyRelTol) {
  const double scale = std::max(eig.energies.cwiseAbs().maxCoeff(), 1e-300);
  return bohrProjections(eig.energies, degeneracyRelTol * scale);
}

Mat levelShiftBlock(const BohrBlock& block, const RVec& energies,
                    const Mat& coupling, const CorrelationKernel& kernel) {
  const Eigen::Index d = energies.size();
  const FlattenedFormFactor& fff = kernel.flattened();
  // Emission-absorption sums a_m = sum_j |v_jm|^2 h(E_m - E_j).
  Vec shift = Vec::Zero(d);
  for (Eigen::Index m = 0; m < d; ++m)
    for (Eigen::Index j = 0; j < d; ++j) {
      const double w = std::norm(coupling(j, m));
      if (w != 0.0) shift(m) += w * kernel(energies(m) - energies(j));
    }
  const auto size = static_cast<Eigen::Index>(block.pairs.size());
  Mat out = Mat::Zero(size, size);
  for (Eigen::Index r = 0; r < size; ++r) {
    const auto [k, l] = block.pairs[r];
    for (Eigen::Index c = 0; c < size; ++c) {
      const auto [m, n] = block.pairs[c];
      cplx value = -kI * M_PI * coupling(k, m) * std::conj(coupling(l, n)) *
                   fff.crossWeight(energies(n) - energies(l));
      if (r == c) value += -0.5 * shift(m) + 0.5 * std::conj(shift(n));
      out(r, c) = value;
    }
  }
  return out;
}

namespace {

const BohrBlock& blockAt(const BohrPartition& part, double e) {
  const BohrBlock* best = nullptr;
  for (const auto& b : part.blocks)
    if (!best || std::abs(b.frequency - e) < std::abs(best->frequency - e))
      best = &b;
  if (std::abs(best->frequency - e) > std::max(part.tolerance, 1e-12))
    throw Error(Errc::InvalidArgument, "not a Bohr frequency");
  return *best;
}

}  // namespace

Mat levelShiftBlock(double e, const SystemSpec& spec, const EigenSystem& eig,
                    const CorrelationKernel& kernel) {
  const auto part = bohrProjections(eig);
  return levelShiftBlock(blockAt(part, e), eig.energies,
                         eig.toEigenbasis(spec.coupling), kernel);
}

double defaultOracleRadius(const FlattenedFormFactor& fff) {
  const double A = fff.formFactor().angularNorm;
  double r = 1.0;
  while (std::max(fff.spectralWeight(r), fff.spectralWeight(-r)) >= 1e-9 * A ||
         r < 2.0)
    r *= 1.02;
  return r;
}

Mat discretizedLevelShiftOracle(const BohrBlock& block, const RVec& energies,
                                const Mat& coupling,
                                const FlattenedFormFactor& fff,
                                const OracleMesh& mesh) {
  if (!(mesh.eps > 0) || mesh.mesh < 100)
    throw Error(Errc::InvalidArgument, "oracle needs eps > 0 and mesh >= 100");
  const Eigen::Index d = energies.size();
  const double radius = mesh.radius > 0 ? mesh.radius : defaultOracleRadius(fff);
  const double step = 2.0 * radius / mesh.mesh;
  const Mat conjCoupling = coupling.conjugate();
  const auto size = static_cast<Eigen::Index>(block.pairs.size());
  const Eigen::Index rows = d * d * mesh.mesh;

  // Columns: the one-boson states I|m,n,vacuum> on the mesh.
  Mat B = Mat::Zero(rows, size);
  Vec resolvent(rows);
  for (int i = 0; i < mesh.mesh; ++i) {
    const double u = -radius + (i + 0.5) * step;
    const cplx emit = fff.amplitude(u) * std::sqrt(step / 2.0);
    const cplx conjugated = -std::conj(fff.amplitude(-u)) * std::sqrt(step / 2.0);
    for (Eigen::Index k = 0; k < d; ++k)
      for (Eigen::Index l = 0; l < d; ++l) {
        const Eigen::Index row = (k * d + l) * mesh.mesh + i;
        resolvent(row) = 1.0 / cplx(energies(k) - energies(l) + u -
                                        block.frequency,
                                    mesh.eps);
        for (Eigen::Index c = 0; c < size; ++c) {
          const auto [m, n] = block.pairs[c];
          cplx entry = 0.0;
          if (l == n) entry += coupling(k, m) * emit;
          if (k == m) entry -= conjCoupling(l, n) * conjugated;
          B(row, c) = entry;
        }
      }
  }
  return -(B.adjoint() * resolvent.asDiagonal() * B);
}

Mat discretizedLevelShiftOracle(double e, const SystemSpec& spec,
                                const EigenSystem& eig,
                                const FlattenedFormFactor& fff, double eps,
                                int mesh) {
  const auto part = bohrProjections(eig);
  return discretizedLevelShiftOracle(blockAt(part, e), eig.energies,
                                     eig.toEigenbasis(spec.coupling), fff,
                                     {eps, mesh, 0.0});
}

Mat LevelShift::blockProjection(std::size_t b) const {
  const Eigen::Index dd = d() * d();
  Mat p = Mat::Zero(dd, dd);
  for (const auto& term : spectrum)
    if (term.block == b) p += term.projection;
  return p;
}

double zeroCutoff(double norm) { return std::max(1e-8, 1e-6 * norm); }

double gapOf(const std::vector<cplx>& eigenvalues, double cutoff) {
  double gap = std::numeric_limits<double>::infinity();
  for (const cplx& z : eigenvalues)
    if (std::abs(z) > cutoff) gap = std::min(gap, z.imag());
  return gap;
}

LevelShift assembleAndDecompose(BohrPartition partition, std::vector<Mat> blocks,
                                Mat frame, A1Policy policy) {
  const Eigen::Index d = partition.d;
  const Eigen::Index dd = d * d;
  if (blocks.size() != partition.blocks.size())
    throw Error(Errc::InvalidArgument, "block count does not match partition");
  if (frame.size() == 0) frame = Mat::Identity(dd, dd);

  LevelShift ls;
  Mat embedded = Mat::Zero(dd, dd);
  std::vector<cplx> allEigenvalues;
  std::vector<std::pair<std::size_t, Mat>> localProjections;
  std::ostringstream details;
  bool simple = true;
  double minImag = std::numeric_limits<double>::infinity();

  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& pairs = partition.blocks[b].pairs;
    const Mat& blk = blocks[b];
    std::vector<Eigen::Index> idx;
    for (auto [m, n] : pairs) idx.push_back(pairIndex(m, n, d));
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c)
        embedded(idx[r], idx[c]) = blk(r, c);

    Eigen::ComplexEigenSolver<Mat> solver(blk);
    const Mat R = solver.eigenvectors();
    const Mat L = R.inverse();
    const Vec vals = solver.eigenvalues();
    for (Eigen::Index j = 0; j < vals.size(); ++j) {
      Mat q = Mat::Zero(dd, dd);
      const Mat local = R.col(j) * L.row(j);
      for (std::size_t r = 0; r < idx.size(); ++r)
        for (std::size_t c = 0; c < idx.size(); ++c)
          q(idx[r], idx[c]) = local(r, c);
      ls.spectrum.push_back({b, vals(j), frame * q * frame.adjoint()});
      allEigenvalues.push_back(vals(j));
      minImag = std::min(minImag, vals(j).imag());
    }
    ls.blocks.push_back(blk);
  }

  ls.full = frame * embedded * frame.adjoint();
  ls.norm = operatorNorm(ls.full);
  const double cutoff = zeroCutoff(ls.norm);

  for (std::size_t b = 0; b < blocks.size(); ++b) {
    std::vector<cplx> vals;
    for (const auto& t : ls.spectrum)
      if (t.block == b) vals.push_back(t.eigenvalue);
    for (std::size_t i = 0; i < vals.size(); ++i)
      for (std::size_t j = i + 1; j < vals.size(); ++j)
        if (std::abs(vals[i] - vals[j]) <= cutoff) {
          simple = false;
          details << "block " << partition.blocks[b].frequency
                  << " has a repeated eigenvalue; ";
        }
  }
  int zeros = 0;
  for (const cplx& z : allEigenvalues)
    if (std::abs(z) <= cutoff) ++zeros;
  if (zeros != 1) details << zeros << " eigenvalues within the zero cutoff; ";
  if (minImag < -1e-8) details << "eigenvalue with negative imaginary part; ";

  ls.gap = gapOf(allEigenvalues, cutoff);
  ls.a1 = {zeros == 1 && simple && minImag >= -1e-8 && ls.gap > 0,
           zeros,
           simple,
           minImag,
           cutoff,
           details.str()};
  if (!ls.a1.ok && ls.a1.details.empty()) ls.a1.details = "gap not positive";
  ls.partition = std::move(partition);
  ls.frame = std::move(frame);
  if (policy == A1Policy::Strict && !ls.a1.ok)
    throw Error(Errc::A1Violation, ls.a1.details);
  return ls;
}

LevelShift levelShiftOperator(const SystemSpec& spec, const EigenSystem& eig,
                              const CorrelationKernel& kernel, A1Policy policy) {
  auto part = bohrProjections(eig);
  if (part.hasAccidental())
    throw Error(Errc::AccidentalDegeneracy,
                "distinct level pairs share a Bohr frequency");
  const Mat v = eig.toEigenbasis(spec.coupling);
  std::vector<Mat> blocks;
  for (const auto& b : part.blocks)
    blocks.push_back(levelShiftBlock(b, eig.energies, v, kernel));
  return assembleAndDecompose(std::move(part), std::move(blocks), Mat(), policy);
}

}  // namespace qsg
