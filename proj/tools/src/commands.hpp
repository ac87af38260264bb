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

namespace qsg::app {

struct CommandOptions {
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> out;
  std::uint64_t seed = 20261014;
  int jobs = 1;
  std::string map = "tau";
  std::optional<double> time;
  std::vector<int> only;
};

enum ExitCode : int { kPass = 0, kCheckFailure = 1, kUsageError = 2, kNumericFailure = 3 };

/// Runs one subcommand and returns the process exit status. Library errors
/// are reported on stderr and mapped to an exit code.
int runCommand(const std::string& name, const CommandOptions& opts);

/// version, config hash, seed, compiler and floating-point environment.
nlohmann::json provenance(const std::string& configHash, std::uint64_t seed);

}  // namespace qsg::app
