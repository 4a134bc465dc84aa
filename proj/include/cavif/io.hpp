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
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "cavif/casimir.hpp"
#include "cavif/grid.hpp"
#include "cavif/influence_kernels.hpp"
#include "cavif/langevin.hpp"
#include "cavif/mode_basis.hpp"
#include "cavif/noise.hpp"
#include "cavif/run_config.hpp"

namespace cavif::io {

using json = nlohmann::json;

// Writes the whole file or throws std::runtime_error naming the path.
void write_file(const std::filesystem::path& path, const std::string& contents);

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

std::string kernel_spectrum_csv(std::string_view name, const Kerneld& kernel, KernelConvention convention);
std::string kernel_series_csv(const Kerneld& kernel, const TimeGrid& grid);
std::string noise_path_csv(const Eigen::VectorXd& t, const Eigen::VectorXd& value,
                           const Eigen::VectorXd& derivative);
std::string trajectory_csv(const Trajectory& tr, double scale);
std::string ensemble_csv(const EnsembleResult& r, double scale);

json to_json(const RegularizationReport& r);
json to_json(const FirstOrderCoefficients& c);
json to_json(const FdrReport& r);
json to_json(const DerivativeIntegralReport& r);
json to_json(const EnsembleManifest& m);

// Run manifest echoing the resolved config without the output block.
json manifest(const RunConfig& cfg);

std::string dump(const json& j);

}  // namespace cavif::io
