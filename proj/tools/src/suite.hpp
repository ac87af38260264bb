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
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace qsg::app {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string summary;       // one-line measured-vs-tolerance text
  nlohmann::json measured;   // full measurements
  double seconds = 0.0;
};

struct SuiteOptions {
  std::uint64_t seed = 20261014;
};

struct Criterion {
  int id;
  const char* name;
  std::function<CheckResult(const SuiteOptions&)> run;
};

const std::vector<Criterion>& acceptanceCriteria();

/// Runs the selected criteria (all when `only` is empty), catching library
/// errors into failed results. `onResult` is called after each criterion.
std::vector<CheckResult> runAcceptance(
    const SuiteOptions& opts, const std::vector<int>& only,
    const std::function<void(const CheckResult&)>& onResult = {});

std::string formatLine(const CheckResult& r);
nlohmann::json toJson(const CheckResult& r);

}  // namespace qsg::app
