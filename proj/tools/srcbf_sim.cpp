// Copyright 2026 The srcbf Authors
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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "srcbf/cli/commands.hpp"

namespace {

void add_common(CLI::App* cmd, srcbf::cli::RunConfig& cfg, bool with_output) {
  cmd->add_option("--config", cfg.config, "Scenario file, or paper_robust / paper_standard")->required();
  cmd->add_option("--dt", cfg.dt, "Integration step [s]");
  cmd->add_option("--horizon", cfg.horizon, "Simulated time [s]");
  cmd->add_option("--set", cfg.overrides, "Override a field, KEY=VALUE (repeatable)")->take_all();
  cmd->add_flag("--quiet", cfg.quiet, "Suppress console summary");
  if (with_output) {
    cmd->add_option("--out", cfg.out_dir, "Output directory (created if absent)");
    cmd->add_flag("--force", cfg.force, "Overwrite existing output files");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust backstepping safety filter: moving-obstacle avoidance simulator"};
  app.require_subcommand(1);

  srcbf::cli::RunConfig cfg;
  auto* run = app.add_subcommand("run", "Simulate one scenario");
  add_common(run, cfg, true);
  auto* compare = app.add_subcommand("compare", "Simulate the standard and robust agents side by side");
  add_common(compare, cfg, true);
  auto* sweep = app.add_subcommand("sweep", "Repeat a scenario over a list of values for one field");
  add_common(sweep, cfg, true);
  sweep->add_option("--param", cfg.sweep_param, "Dotted key to sweep, e.g. avoidance.M")->required();
  sweep->add_option("--values", cfg.sweep_values, "Values, comma separated")->delimiter(',')->required();
  auto* validate = app.add_subcommand("validate", "Check a scenario and print it with defaults resolved");
  add_common(validate, cfg, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : srcbf::cli::kExitValidation;
  }

  if (run->parsed()) return srcbf::cli::cmd_run(cfg, std::cout, std::cerr);
  if (compare->parsed()) return srcbf::cli::cmd_compare(cfg, std::cout, std::cerr);
  if (sweep->parsed()) return srcbf::cli::cmd_sweep(cfg, std::cout, std::cerr);
  return srcbf::cli::cmd_validate(cfg, std::cout, std::cerr);
}
