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

#include <numbers>
#include <optional>
#include <string>
#include <string_view>

namespace cavif {

// Natural units: hbar = c = k_B = 1.
inline constexpr double kHbar = 1.0;

enum class KernelConvention { MainText, Appendix };

std::string to_string(KernelConvention c);
KernelConvention parse_convention(std::string_view s);

struct PhysicalConfig {
  double mass = 1000.0;
  double trap_frequency = 1.0;
  double cavity_length = 1.0;
  double temperature = 0.0;
  int k_max = 4;
  std::optional<double> sigma;
  KernelConvention convention = KernelConvention::Appendix;

  double mode_frequency(int k) const { return k * std::numbers::pi / cavity_length; }

  // Throws std::invalid_argument on violated invariants.
  void validate() const;

  bool operator==(const PhysicalConfig&) const = default;
};

}  // namespace cavif
