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

#include <doctest.h>

#include "qsg/error.hpp"
#include "qsg/model.hpp"

namespace qsg::testing {

inline Mat diag(std::initializer_list<double> values) {
  Mat m = Mat::Zero(values.size(), values.size());
  Eigen::Index i = 0;
  for (double v : values) m(i, i) = v, ++i;
  return m;
}

inline Mat pauliX() {
  Mat m = Mat::Zero(2, 2);
  m(0, 1) = m(1, 0) = 1.0;
  return m;
}

inline Mat pauliZ() { return diag({1.0, -1.0}); }

inline SystemSpec spec(Mat h, Mat v, double beta = 1.0, double lambda = 0.1) {
  return {std::move(h), std::move(v), beta, lambda};
}

// A qubit whose coupling has both off-diagonal and diagonal parts in the
// energy basis.
inline SystemSpec genericQubit(double lambda = 0.1) {
  Mat h(2, 2), v(2, 2);
  h << 0.0, 0.2, 0.2, 1.0;
  v << 0.4, 1.0, 1.0, 0.0;
  return spec(h, v, 1.0, lambda);
}

template <class F>
Errc errorCode(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no qsg::Error thrown");
  return Errc::InvalidArgument;
}

}  // namespace qsg::testing
