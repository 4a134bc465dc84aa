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

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "cavif/run_config.hpp"

namespace cavif {

inline constexpr int kExitPass = 0;
inline constexpr int kExitTolerance = 1;
inline constexpr int kExitUsage = 2;

struct CommandOptions {
  unsigned threads = 1;
  std::ostream* log = nullptr;
};

struct CommandResult {
  int exit_code = kExitPass;
  std::filesystem::path directory;
  std::vector<std::string> files;  // in write order, manifest first
};

// Runs the configured command and writes its outputs. Errors propagate as
// exceptions; use exit_code_for() to map them.
CommandResult run_command(const RunConfig& cfg, const CommandOptions& opts = {});

int exit_code_for(const std::exception& e);

}  // namespace cavif
