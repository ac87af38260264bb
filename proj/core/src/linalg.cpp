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

#include "qsg/linalg.hpp"

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "qsg/error.hpp"

namespace qsg {

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vec vecRows(const Mat& m) {
  Vec v(m.size());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) v(r * m.cols() + c) = m(r, c);
  }
  return v;
}

Mat unvecRows(const Vec& v, Eigen::Index d) {
  if (v.size() != d * d) {
    throw Error(Errc::InvalidArgument, "unvecRows: size mismatch");
  }
  Mat m(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) m(r, c) = v(r * d + c);
  }
  return m;
}

Mat hermitianPart(const Mat& a) { return 0.5 * (a + a.adjoint()); }

double hermitianDefect(const Mat& a) { return (a - a.adjoint()).norm(); }

double operatorNorm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues()(0);
}

double traceNorm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues().sum();
}

double minHermitianEigenvalue(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitianPart(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Mat sqrtPositive(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitianPart(a));
  RVec ev = es.eigenvalues();
  if (ev.minCoeff() < 0.0) {
    throw Error(Errc::NotPositive, "sqrtPositive: negative eigenvalue");
  }
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() *
         es.eigenvectors().adjoint();
}

Mat expm(const Mat& a) { return a.exp(); }

double logLogSlope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(Errc::InvalidArgument, "logLogSlope needs >= 2 matching points");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Mat RandomSource::matrix(Eigen::Index rows, Eigen::Index cols) {
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = cplx(normal(), normal());
  }
  return m;
}

Mat RandomSource::hermitian(Eigen::Index d) {
  Mat g = matrix(d, d);
  return 0.5 * (g + g.adjoint());
}

Mat RandomSource::densityMatrix(Eigen::Index d) {
  Mat g = matrix(d, d);
  Mat rho = g * g.adjoint();
  return hermitianPart(rho / rho.trace().real());
}

Mat RandomSource::hermitianWithSpectrum(const RVec& spectrum) {
  const Eigen::Index d = spectrum.size();
  Eigen::HouseholderQR<Mat> qr(matrix(d, d));
  Mat q = qr.householderQ();
  return hermitianPart(q * spectrum.cast<cplx>().asDiagonal() * q.adjoint());
}

}  // namespace qsg
