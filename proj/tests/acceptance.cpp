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

// Acceptance suite: one line per criterion, exit status 0 iff all selected
// criteria pass.

#include <CLI11.hpp>
#include <iostream>

#include "suite.hpp"

int main(int argc, char** argv) {
  CLI::App app{"qsg acceptance criteria"};
  std::vector<int> only;
  qsg::app::SuiteOptions opts;
  app.add_option("--only", only, "criterion numbers")->check(CLI::Range(1, 14));
  app.add_option("--seed", opts.seed, "seed for random instances");
  CLI11_PARSE(app, argc, argv);

  bool all = true;
  qsg::app::runAcceptance(opts, only, [&](const qsg::app::CheckResult& r) {
    std::cout << qsg::app::formatLine(r) << std::endl;
    all = all && r.pass;
  });
  return all ? 0 : 1;
}
