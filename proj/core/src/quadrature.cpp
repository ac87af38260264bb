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

#include "qsg/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>
#include <vector>

#include "qsg/error.hpp"

namespace qsg {

namespace {
constexpr unsigned kMaxDepth = 18;
}

Integral integrate(const std::function<double(double)>& f,
                   std::span<const double> points, double relTol,
                   double absTol) {
  std::vector<double> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  Integral total;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double err = 0.0;
    double l1 = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, pts[i], pts[i + 1], kMaxDepth, relTol, &err, &l1);
    total.value += v;
    total.error += err;
    total.l1 += l1;
  }
  if (!std::isfinite(total.value) ||
      total.error > std::max(absTol, relTol * total.l1)) {
    std::ostringstream os;
    os << "error estimate " << total.error << " above tolerance (L1 "
       << total.l1 << ")";
    throw Error(Errc::QuadratureFailure, os.str());
  }
  return total;
}

double gaussLegendre(const std::function<double(double)>& f, double a,
                     double b, int panels) {
  using rule = boost::math::quadrature::gauss<double, 20>;
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    sum += rule::integrate(f, lo, lo + h);
  }
  return sum;
}

}  // namespace qsg
