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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"
#include "helpers.hpp"

using namespace qsg::app;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("qsg_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path writeConfig(const fs::path& dir, const std::string& oracle = "") {
  const fs::path p = dir / "config.json";
  std::ofstream(p) << R"({"system": {"d": 2, "H_S": [[0,0],[0.2,0],[0.2,0],[1,0]],
    "V_S": [[0.4,0],[1,0],[1,0],[0,0]], "beta": 1.0, "lambda": 0.1})"
                   << oracle << "}";
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CommandOptions options(const fs::path& dir) {
  CommandOptions o;
  o.config = writeConfig(dir);
  o.out = dir / "out";
  return o;
}

}  // namespace

TEST_CASE("lso report") {
  const auto dir = scratch("lso");
  const auto opts = options(dir);
  REQUIRE(runCommand("lso", opts) == kPass);
  const auto j = nlohmann::json::parse(slurp(dir / "out" / "lso.json"));
  CHECK(j["bohr_frequencies"].size() == 3);
  std::size_t pairs = 0;
  for (const auto& b : j["block_matrices"]) pairs += b["pairs"].size();
  CHECK(pairs == 4);
  CHECK(j["gap"].get<double>() > 0.0);
  CHECK(j["a1_report"]["ok"].get<bool>());
  CHECK(j["provenance"]["seed"].get<std::uint64_t>() == opts.seed);
}

TEST_CASE("reports are reproducible") {
  const auto dir = scratch("repro");
  auto opts = options(dir);
  REQUIRE(runCommand("renorm", opts) == kPass);
  const std::string first = slurp(dir / "out" / "renorm.json");
  opts.jobs = 3;
  REQUIRE(runCommand("renorm", opts) == kPass);
  CHECK(slurp(dir / "out" / "renorm.json") == first);
}

TEST_CASE("evolve at time zero is the identity") {
  const auto dir = scratch("evolve");
  auto opts = options(dir);
  opts.map = "tau";
  opts.time = 0.0;
  REQUIRE(runCommand("evolve", opts) == kPass);
  const std::string csv = slurp(dir / "out" / "evolve.csv");
  CHECK(csv.rfind("t,observable_id,re,im,unitality_defect,choi_min_eig\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("choi and sweep artifacts") {
  const auto dir = scratch("choi");
  auto opts = options(dir);
  opts.map = "sigma";
  opts.time = 2.0;
  CHECK(runCommand("choi", opts) == kPass);
  const auto j = nlohmann::json::parse(slurp(dir / "out" / "choi.json"));
  CHECK(j["min_eigenvalue"].get<double>() >= -1e-8);
  CHECK(runCommand("sweep", opts) == kPass);
  CHECK(fs::exists(dir / "out" / "sweep.csv"));
}

TEST_CASE("compare beyond the dimension limit fails") {
  const auto dir = scratch("compare");
  auto opts = options(dir);
  opts.config = writeConfig(dir, R"(, "oracle": {"N": 6, "fock_cutoff": 4, "dim_limit": 4096})");
  CHECK(runCommand("compare", opts) == kUsageError);
}

TEST_CASE("usage errors") {
  const auto dir = scratch("usage");
  CommandOptions opts;
  CHECK(runCommand("lso", opts) == kUsageError);
  opts.config = dir / "missing.json";
  CHECK(runCommand("lso", opts) == kUsageError);
  auto good = options(dir);
  good.map = "bogus";
  CHECK(runCommand("evolve", good) == kUsageError);
}
