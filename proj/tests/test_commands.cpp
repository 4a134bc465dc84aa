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

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cavif/commands.hpp"
#include "cavif/errors.hpp"
#include "cavif/run_config.hpp"

using namespace cavif;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / "cavif_cmd_test" / name;
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(cell);
    rows.push_back(row);
  }
  return rows;
}

RunConfig base(Command c, const std::string& dir) {
  RunConfig cfg;
  cfg.command = c;
  cfg.output_directory = scratch(dir).string();
  return cfg;
}

}  // namespace

TEST(Commands, KernelsSingleModeRows) {
  auto cfg = base(Command::Kernels, "k1");
  cfg.physical.k_max = 1;
  cfg.physical.temperature = 1.0;
  auto r = run_command(cfg);
  EXPECT_EQ(r.exit_code, kExitPass);
  EXPECT_EQ(r.files.front(), "manifest.json");
  EXPECT_EQ(read_csv(r.directory / "kernel_nbar.csv").size(), 3u);  // header + 2
  cfg.physical.temperature = 0.0;
  cfg.output_directory = scratch("k0").string();
  r = run_command(cfg);
  EXPECT_EQ(read_csv(r.directory / "kernel_nbar.csv").size(), 2u);
  const auto rows = read_csv(r.directory / "kernel_nbar.csv");
  EXPECT_EQ(rows[0], (std::vector<std::string>{"frequency", "cos_amp", "sin_amp", "kernel", "convention"}));
  EXPECT_EQ(rows[1][3], "nbar");
  EXPECT_EQ(rows[1][4], "appendix");
}

TEST(Commands, KernelsEmptyGridSpectraOnly) {
  auto cfg = base(Command::Kernels, "kempty");
  cfg.grid = {0.0, 0.0, 0.0};
  const auto r = run_command(cfg);
  EXPECT_TRUE(fs::exists(r.directory / "kernel_mdelta.csv"));
  EXPECT_FALSE(fs::exists(r.directory / "series_mdelta.csv"));
  EXPECT_EQ(r.files.size(), 8u);
}

TEST(Commands, KernelsMainTextReportsWarnings) {
  auto cfg = base(Command::Kernels, "kmain");
  cfg.physical.convention = KernelConvention::MainText;
  cfg.grid = {0.0, 0.0, 0.0};
  const auto r = run_command(cfg);
  const auto j = nlohmann::json::parse(slurp(r.directory / "build_report.json"));
  EXPECT_EQ(j["warnings"].size(), 4u);
  EXPECT_TRUE(j["first_order"].contains("main_text_trap_correction"));
}

TEST(Commands, FdrZeroTemperaturePasses) {
  const auto r = run_command(base(Command::Fdr, "fdr0"));
  EXPECT_EQ(r.exit_code, kExitPass);
  EXPECT_EQ(read_csv(r.directory / "fdr.csv").size(), 13u);
}

TEST(Commands, FdrFiniteTemperatureFlagsPrintedMinusForm) {
  auto cfg = base(Command::Fdr, "fdr1");
  cfg.physical.temperature = 1.0;
  const auto r = run_command(cfg);
  EXPECT_EQ(r.exit_code, kExitTolerance);
  const auto j = nlohmann::json::parse(slurp(r.directory / "fdr_report.json"));
  for (const auto& p : j["pairs"]) EXPECT_LT(p["minus_consistent_residual"].get<double>(), 1e-12);
}

TEST(Commands, CasimirPasses) {
  const auto r = run_command(base(Command::Casimir, "cas"));
  EXPECT_EQ(r.exit_code, kExitPass);
  const auto j = nlohmann::json::parse(slurp(r.directory / "casimir.json"));
  EXPECT_LT(j["relative_error"].get<double>(), 1e-3);
}

TEST(Commands, BasisCheckOrthonormality) {
  const auto r = run_command(base(Command::BasisCheck, "basis"));
  const auto rows = read_csv(r.directory / "basis.csv");
  ASSERT_EQ(rows.size(), 37u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(std::stod(rows[i][2]), 1e-10);
  // Printed r/l placement does not hold off the diagonal.
  EXPECT_EQ(r.exit_code, kExitTolerance);
}

TEST(Commands, SimulateFreeOscillator) {
  auto cfg = base(Command::Simulate, "free");
  cfg.simulate.memory = cfg.simulate.noise = cfg.simulate.first_order = false;
  cfg.simulate.initial = InitialCondition::Fixed;
  cfg.simulate.q0 = 1.0;
  const auto r = run_command(cfg);
  const auto rows = read_csv(r.directory / "trajectory.csv");
  ASSERT_EQ(rows.size(), 10002u);
  double e = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) e = std::max(e, std::abs(std::stod(rows[i][1]) - std::cos(std::stod(rows[i][0]))));
  EXPECT_LT(e, 1e-4);
}

TEST(Commands, SimulateStepSizeIsUsageError) {
  auto cfg = base(Command::Simulate, "step");
  cfg.grid.dt = 0.05;
  try {
    run_command(cfg);
    FAIL();
  } catch (const StepSizeError& e) {
    EXPECT_EQ(exit_code_for(e), kExitUsage);
  }
}

TEST(Commands, NoiseValidationPasses) {
  auto cfg = base(Command::Noise, "noise");
  cfg.physical.k_max = 3;
  cfg.physical.temperature = 1.0;
  cfg.grid = {0.0, 0.63, 0.01};
  cfg.ensemble.paths = 10000;
  const auto r = run_command(cfg);
  EXPECT_EQ(r.exit_code, kExitPass);
  const auto j = nlohmann::json::parse(slurp(r.directory / "noise_report.json"));
  EXPECT_EQ(j["grid_points"].get<int>(), 64);
  EXPECT_LT(j["max_studentized_deviation"].get<double>(), 5.0);
}

TEST(Commands, NoiseRejectsHugeGrid) {
  auto cfg = base(Command::Noise, "noisebig");
  EXPECT_THROW(run_command(cfg), ConfigError);
}

TEST(Commands, ByteIdenticalAcrossThreadCounts) {
  auto cfg = base(Command::Simulate, "det1");
  cfg.grid = {0.0, 1.0, 0.002};
  cfg.ensemble.paths = 50;
  CommandOptions one, four;
  four.threads = 4;
  const auto a = run_command(cfg, one);
  cfg.output_directory = scratch("det4").string();
  const auto b = run_command(cfg, four);
  ASSERT_EQ(a.files, b.files);
  for (const auto& f : a.files) EXPECT_EQ(slurp(a.directory / f), slurp(b.directory / f)) << f;
}

TEST(Commands, ManifestReproducesOutputs) {
  auto cfg = base(Command::Kernels, "man1");
  cfg.physical.temperature = 0.3;
  cfg.grid = {0.0, 0.5, 0.01};
  const auto a = run_command(cfg);
  auto again = load_config(a.directory / "manifest.json");
  again.output_directory = scratch("man2").string();
  const auto b = run_command(again);
  for (const auto& f : a.files) EXPECT_EQ(slurp(a.directory / f), slurp(b.directory / f)) << f;
}

TEST(Commands, ExitCodeMapping) {
  EXPECT_EQ(exit_code_for(ConfigError("x")), kExitUsage);
  EXPECT_EQ(exit_code_for(std::invalid_argument("x")), kExitUsage);
  EXPECT_EQ(exit_code_for(DivergenceError("x", 1.0)), kExitTolerance);
  EXPECT_EQ(exit_code_for(NotPsdError("x")), kExitTolerance);
}

TEST(Cli, ExitCodesAndOverrides) {
  const std::string tool = CAVIF_TOOL;
  const auto out = scratch("cli");
  auto run = [&](const std::string& args) {
    const int status = std::system((tool + " " + args + " 2>/dev/null").c_str());
    return WEXITSTATUS(status);
  };
  EXPECT_EQ(run("casimir --out " + (out / "c").string()), 0);
  EXPECT_EQ(run("fdr --out " + (out / "f").string()), 0);
  EXPECT_EQ(run("nonsense --out " + (out / "n").string()), 2);
  EXPECT_EQ(run("--convention footnote"), 2);
  EXPECT_EQ(run("kernels --config /does/not/exist"), 2);
  EXPECT_EQ(run("basis-check --out " + (out / "b").string()), 1);
  EXPECT_EQ(run("kernels --seed 77 --convention main_text --out " + (out / "k").string()), 0);
  const auto cfg = load_config(out / "k" / "manifest.json");
  EXPECT_EQ(cfg.ensemble.seed, 77u);
  EXPECT_EQ(cfg.physical.convention, KernelConvention::MainText);
}
