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

#include "config.hpp"
#include "helpers.hpp"

using namespace qsg;
using namespace qsg::app;

namespace {

const char* kMinimal = R"({
  "system": {"d": 2, "H_S": [[0,0],[0,0],[0,0],[1,0]],
             "V_S": [[0,0],[1,0],[1,0],[0,0]], "beta": 1.0}
})";

ConfigError configError(const std::string& text) {
  try {
    parseConfig(text);
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("config accepted");
  return ConfigError(Errc::ValidationError, "", "");
}

std::string withSystem(const std::string& h, const std::string& extra = "") {
  return R"({"system": {"d": 2, "H_S": )" + h +
         R"(, "V_S": [[0,0],[1,0],[1,0],[0,0]], "beta": 1.0})" + extra + "}";
}

}  // namespace

TEST_CASE("minimal qubit config") {
  const auto cfg = parseConfig(kMinimal);
  CHECK(cfg.system.dim() == 2);
  CHECK(cfg.system.lambda == 0.0);
  CHECK(cfg.bath.n == 1);
  CHECK(cfg.bath.m == 1);
  CHECK(cfg.oracle.modes == 5);
  CHECK(cfg.oracle.times.size() == 41);
  CHECK(cfg.sweep.size() == 4);
  CHECK(cfg.hash == parseConfig(kMinimal).hash);
  CHECK(cfg.hash.size() == 16);
}

TEST_CASE("complex entries and the canonical form") {
  const auto cfg = parseConfig(withSystem("[[0,0],[0.1,0.2],[0.1,-0.2],[1,0]]"));
  CHECK(cfg.system.hamiltonian(0, 1) == cplx(0.1, 0.2));
  const auto again = fromJson(cfg.canonical);
  CHECK(again.hash == cfg.hash);
  CHECK((again.system.hamiltonian - cfg.system.hamiltonian).norm() == 0.0);
}

TEST_CASE("non-hermitian hamiltonian") {
  const auto e = configError(withSystem("[[0,0],[0.5,0],[0,0],[1,0]]"));
  CHECK(e.code() == Errc::ValidationError);
  CHECK(e.key() == "system.H_S");
  CHECK(e.reason() == "hermiticity");
}

TEST_CASE("unsupported bath family") {
  const auto e = configError(withSystem("[[0,0],[0,0],[0,0],[1,0]]", R"(, "bath": {"m": 3})"));
  CHECK(e.key() == "bath.m");
  CHECK(e.reason() == "unsupported family");
}

TEST_CASE("degenerate spectrum") {
  const auto e = configError(withSystem("[[1,0],[0,0],[0,0],[1,0]]"));
  CHECK(e.key() == "system.H_S");
  CHECK(e.reason() == "degenerate spectrum");
}

TEST_CASE("unknown keys are rejected") {
  const auto e = configError(withSystem("[[0,0],[0,0],[0,0],[1,0]]", R"(, "bath": {"nn": 1})"));
  CHECK(e.key() == "bath.nn");
  CHECK(e.reason() == "unknown key");
}

TEST_CASE("parse errors carry the line") {
  const auto e = configError("{\n  \"system\": {\n    \"d\": 2,,\n  }\n}");
  CHECK(e.code() == Errc::ParseError);
  CHECK(std::string(e.what()).find("line 3") != std::string::npos);
}

TEST_CASE("time grid forms") {
  const auto list = parseConfig(
      withSystem("[[0,0],[0,0],[0,0],[1,0]]", R"(, "oracle": {"time_grid": [0, 1, 2.5]})"));
  CHECK(list.oracle.times == std::vector<double>{0, 1, 2.5});
  const auto range = parseConfig(withSystem(
      "[[0,0],[0,0],[0,0],[1,0]]", R"(, "oracle": {"time_grid": {"t_max": 2, "steps": 4}})"));
  CHECK(range.oracle.times == std::vector<double>{0, 0.5, 1, 1.5, 2});
}
