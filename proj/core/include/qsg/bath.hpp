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

#pragma once

#include <vector>

#include "qsg/linalg.hpp"

namespace qsg {

/// Radial form factor r^(n-1/2) e^{-r^m} times an angular part whose squared
/// norm over the sphere is `angularNorm` and whose phase is `phase`.
struct FormFactor {
  int n = 1;
  int m = 1;
  double angularNorm = 1.0;
  double phase = 0.0;
  double theta0 = 1.0;  // analyticity strip; not used by any kernel

  double p() const { return -0.5 + n; }
};

/// Throws UnsupportedFamily unless n >= 0 and m in {1, 2}; InvalidArgument
/// for a non-positive angular norm or theta0.
FormFactor familyMember(int n, int m, double angularNorm, double phase,
                        double theta0 = 1.0);
void validate(const FormFactor& ff);

/// The form factor glued into a function on the whole real line at inverse
/// temperature beta. Positive u are emission-side (radius r = u), negative
/// u are the reflected absorption branch.
class FlattenedFormFactor {
 public:
  FlattenedFormFactor(FormFactor ff, double beta);

  const FormFactor& formFactor() const { return ff_; }
  double beta() const { return beta_; }

  /// u / (1 - e^{-beta u}), equal to 1/beta at u = 0.
  double thermalFactor(double u) const;
  /// Radially integrated amplitude, |amplitude(u)|^2 = spectralWeight(u).
  cplx amplitude(double u) const;
  /// J(u) = angularNorm * thermalFactor(u) |u|^{2n} e^{-2|u|^m}.
  double spectralWeight(double u) const;
  /// log J(u), finite wherever J(u) > 0; -inf at the zeros.
  double logSpectralWeight(double u) const;
  /// e^{-beta u/2} J(u) = sqrt(J(u) J(-u)), even in u.
  double crossWeight(double u) const;

  /// Radius outside of which the weight is below 1e-18 (relative to the
  /// angular norm).
  double supportRadius() const { return support_; }
  /// Integral of J over the real line.
  double totalWeight() const;

 private:
  double profile(double r) const;  // |r|^{2n} e^{-2|r|^m}

  FormFactor ff_;
  double beta_;
  double support_;
};

FlattenedFormFactor flatten(const FormFactor& ff, double beta);

struct QuadratureTolerance {
  double absTol = 1e-12;
  double relTol = 1e-10;
  double window = 1.0;  // half-width of the singularity-subtraction window
};

struct KernelValue {
  cplx value;
  double error = 0.0;
};

/// h(w) = PV int J(u)/(u-w) du - i pi J(w), the boundary value of the
/// resolvent of the spectral weight from below the real axis.
class CorrelationKernel {
 public:
  CorrelationKernel(FlattenedFormFactor fff, QuadratureTolerance tol = {});

  const FlattenedFormFactor& flattened() const { return fff_; }
  const QuadratureTolerance& tolerance() const { return tol_; }

  KernelValue evaluate(double omega) const;
  cplx operator()(double omega) const { return evaluate(omega).value; }
  double principalValue(double omega) const {
    return evaluate(omega).value.real();
  }
  /// -conj(h(-w)), the kernel seen by the reflected branch.
  cplx reflected(double omega) const { return -std::conj((*this)(-omega)); }

  /// int J(u)/(u - w + i eps) du by direct quadrature; independent of the
  /// subtraction scheme and used to cross-check it.
  cplx regularized(double omega, double eps) const;

 private:
  FlattenedFormFactor fff_;
  QuadratureTolerance tol_;
};

CorrelationKernel correlationKernel(const FlattenedFormFactor& fff,
                                    QuadratureTolerance tol = {});

/// Repeated Richardson extrapolation to zero step for values computed at
/// steps h, h/2, h/4, ... assuming an expansion in integer powers of h.
cplx richardsonHalving(const std::vector<cplx>& values);

}  // namespace qsg
