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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cavif/config.hpp"
#include "cavif/influence_kernels.hpp"
#include "cavif/langevin.hpp"
#include "cavif/memory.hpp"

namespace cavif {

enum class Command { Kernels, Fdr, Casimir, Noise, Simulate, BasisCheck };

std::string_view to_string(Command c);
Command parse_command(std::string_view s);

struct GridConfig {
  double t_initial = 0.0;
  double t_final = 10.0;
  double dt = 0.001;
  bool operator==(const GridConfig&) const = default;
};

struct EnsembleConfig {
  std::uint64_t paths = 1;
  std::uint64_t seed = 1;
  bool operator==(const EnsembleConfig&) const = default;
};

struct SimulateConfig {
  Dof dof = Dof::Delta;
  MemoryMode memory_mode = MemoryMode::MarkovEmbedding;
  Regime regime = Regime::LowT;
  bool memory = true;
  bool noise = true;
  bool first_order = true;
  InitialCondition initial = InitialCondition::Wigner;
  double q0 = 0.0;
  double v0 = 0.0;
  double scale = 1.0;
  bool operator==(const SimulateConfig&) const = default;
};

struct NoiseConfig {
  std::string kernel = "nbar";
  double max_studentized = 5.0;
  bool operator==(const NoiseConfig&) const = default;
};

struct CheckConfig {
  double fdr_tolerance = 1e-12;
  double quadrature_tolerance = 1e-12;
  double basis_tolerance = 1e-8;
  double orthonormality_tolerance = 1e-10;
  int basis_max_index = 6;
  std::vector<int> ladder{25, 50, 100, 200};
  double casimir_tolerance = 1e-3;
  bool operator==(const CheckConfig&) const = default;
};

struct RunConfig {
  Command command = Command::Kernels;
  PhysicalConfig physical;
  GridConfig grid;
  EnsembleConfig ensemble;
  std::string output_directory = "out";
  SimulateConfig simulate;
  NoiseConfig noise;
  CheckConfig check;

  TimeGrid time_grid() const { return TimeGrid::from_range(grid.t_initial, grid.t_final, grid.dt); }
  void validate() const;
  bool operator==(const RunConfig&) const = default;
};

using Sections = std::map<std::string, std::map<std::string, std::string>>;

// Sectioned key = value text; '#' and ';' start comments.
Sections parse_sections(std::string_view text);
RunConfig config_from_sections(const Sections& sections);
Sections config_to_sections(const RunConfig& cfg, bool include_output = true);

RunConfig parse_config(std::string_view text);
std::string emit_config(const RunConfig& cfg, bool include_output = true);

// Reads a config file, or the "config" object of a run manifest.
RunConfig load_config(const std::filesystem::path& path);

// FNV-1a 64 of the emitted config without the output block, in hex.
std::string config_hash(const RunConfig& cfg);

std::string format_double(double x);

}  // namespace cavif
