// Copyright 2026 The cavif Authors
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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cavif/commands.hpp"
#include "cavif/errors.hpp"
#include "cavif/run_config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"cavif: cavity mirror influence-functional toolkit"};
  std::string command;
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::string convention;
  unsigned threads = 1;
  app.add_option("command", command, "kernels | fdr | casimir | noise | simulate | basis-check");
  app.add_option("--config", config_path, "INI config or JSON manifest")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "master seed override");
  app.add_option("--convention", convention, "kernel convention")
      ->check(CLI::IsMember({"main_text", "appendix"}));
  app.add_option("--threads", threads, "worker threads for ensembles")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cavif::kExitUsage;
  }

  try {
    cavif::RunConfig cfg = config_path.empty() ? cavif::RunConfig{} : cavif::load_config(config_path);
    if (!command.empty()) cfg.command = cavif::parse_command(command);
    if (!out_dir.empty()) cfg.output_directory = out_dir;
    if (seed) cfg.ensemble.seed = *seed;
    if (!convention.empty()) cfg.physical.convention = cavif::parse_convention(convention);
    cavif::CommandOptions opts;
    opts.threads = threads;
    opts.log = &std::cerr;
    const auto result = cavif::run_command(cfg, opts);
    if (result.exit_code != cavif::kExitPass) std::cerr << "tolerance check failed\n";
    return result.exit_code;
  } catch (const cavif::StepSizeError& e) {
    std::cerr << "error: " << e.what() << " (suggested dt " << e.suggested_dt() << ")\n";
    return cavif::exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cavif::exit_code_for(e);
  }
}
