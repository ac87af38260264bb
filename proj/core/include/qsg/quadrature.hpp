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

#include <functional>
#include <span>

namespace qsg {

struct Integral {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

/// Adaptive Gauss-Kronrod integration over [points.front(), points.back()],
/// split at every interior point (kinks, poles of a subtracted integrand).
/// Throws QuadratureFailure when the estimate exceeds max(absTol, relTol*L1)
/// after maximal refinement.
Integral integrate(const std::function<double(double)>& f,
                   std::span<const double> points, double relTol,
                   double absTol);

/// Fixed composite Gauss-Legendre rule on [a, b] with `panels` panels of
/// 20 nodes. For smooth integrands whose exponent range over the interval
/// is moderate.
double gaussLegendre(const std::function<double(double)>& f, double a,
                     double b, int panels);

}  // namespace qsg
