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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsg/bath.hpp"
#include "qsg/model.hpp"
#include "qsg/oracle.hpp"

namespace qsg::app {

struct OracleConfig {
  int modes = 5;
  int fockCutoff = 4;
  DiscretizationScheme scheme = DiscretizationScheme::Gauss;
  std::vector<double> times;
  long dimLimit = 4096;
  double cutoffTol = 1e-6;
  std::optional<Mat> rho0;
};

struct OutputConfig {
  std::string directory = ".";
  std::vector<std::string> formats{"json", "csv"};
};

struct ExperimentConfig {
  SystemSpec system;
  double degeneracyTol = kDefaultDegeneracyTol;
  FormFactor bath;
  QuadratureTolerance quad;
  OracleConfig oracle;
  std::vector<double> sweep{0.02, 0.04, 0.08, 0.16};
  OutputConfig output;

  nlohmann::json canonical;  // normalised form, defaults filled in
  std::string hash;          // FNV-1a of canonical.dump()
};

/// Throws ConfigError with ParseError (with line number) or
/// ValidationError (with the key path and reason).
ExperimentConfig loadConfig(const std::filesystem::path& path);
ExperimentConfig parseConfig(const std::string& text);
ExperimentConfig fromJson(const nlohmann::json& j);

std::string fnv1a(const std::string& bytes);

nlohmann::json toJson(const Mat& m);
nlohmann::json toJson(const RVec& v);
nlohmann::json toJson(cplx z);

}  // namespace qsg::app
