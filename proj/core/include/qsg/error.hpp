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

#include <stdexcept>
#include <string>
#include <string_view>

namespace qsg {

enum class Errc {
  NonHermitian,
  DegenerateSpectrum,
  Overflow,
  SingularWeights,
  QuadratureFailure,
  UnsupportedFamily,
  AmbiguousClustering,
  AccidentalDegeneracy,
  KernelEvaluationFailure,
  A1Violation,
  NotPositive,
  SingularState,
  ExponentialOverflow,
  DimensionLimit,
  CutoffNonConvergence,
  FitWindowEmpty,
  InvalidArgument,
  ParseError,
  ValidationError,
};

std::string_view to_string(Errc code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Configuration errors also carry the offending key path.
class ConfigError : public Error {
 public:
  ConfigError(Errc code, std::string key, std::string reason)
      : Error(code, key + ": " + reason),
        key_(std::move(key)),
        reason_(std::move(reason)) {}

  const std::string& key() const noexcept { return key_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::string key_;
  std::string reason_;
};

}  // namespace qsg
