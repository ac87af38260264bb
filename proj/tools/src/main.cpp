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

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"qsg: weak-coupling and renormalized semigroups of an open quantum system"};
  app.require_subcommand(1, 1);

  qsg::app::CommandOptions opts;
  std::string config, out;
  double t = 0.0;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "experiment config (JSON)");
    sub->add_option("--out", out, "output directory");
    sub->add_option("--seed", opts.seed, "seed for random inputs");
    sub->add_option("--jobs", opts.jobs, "concurrent sweep points")->check(CLI::PositiveNumber);
  };
  auto withMap = [&](CLI::App* sub) {
    sub->add_option("--map", opts.map, "sigma, tau or delta")
        ->check(CLI::IsMember({"sigma", "tau", "delta"}));
    sub->add_option("--t", t, "single time instead of the config grid");
  };

  const std::pair<const char*, const char*> names[] = {
      {"lso", "level shift blocks, spectrum and gap"},
      {"renorm", "renormalized Gibbs data and its scaling table"},
      {"evolve", "observable trajectories of one semigroup"},
      {"compare", "semigroups against the finite-bath oracle"},
      {"choi", "Choi matrix of one map"},
      {"sweep", "renormalization shifts over the coupling sweep"},
      {"check", "acceptance suite"},
  };
  for (auto [name, help] : names) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(sub);
    if (std::string(name) == "evolve" || std::string(name) == "choi") withMap(sub);
    if (std::string(name) == "check")
      sub->add_option("--only", opts.only, "criterion numbers")->check(CLI::Range(1, 14));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qsg::app::kUsageError;
  }

  CLI::App* sub = app.get_subcommands().front();
  if (!config.empty()) opts.config = config;
  if (!out.empty()) opts.out = out;
  if (auto* opt = sub->get_option_no_throw("--t"); opt && opt->count()) opts.time = t;
  return qsg::app::runCommand(sub->get_name(), opts);
}
