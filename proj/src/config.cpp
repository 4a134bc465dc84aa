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

#include "cavif/config.hpp"

#include <cmath>
#include <stdexcept>

namespace cavif {

std::string to_string(KernelConvention c) {
  return c == KernelConvention::MainText ? "main_text" : "appendix";
}

KernelConvention parse_convention(std::string_view s) {
  if (s == "main_text") return KernelConvention::MainText;
  if (s == "appendix") return KernelConvention::Appendix;
  throw std::invalid_argument("unknown kernel convention '" + std::string(s) + "'");
}

void PhysicalConfig::validate() const {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw std::invalid_argument("mass must be positive");
  if (!(trap_frequency >= 0.0) || !std::isfinite(trap_frequency))
    throw std::invalid_argument("trap_frequency must be non-negative");
  if (!(cavity_length > 0.0) || !std::isfinite(cavity_length))
    throw std::invalid_argument("cavity_length must be positive");
  if (!(temperature >= 0.0) || !std::isfinite(temperature))
    throw std::invalid_argument("temperature must be non-negative");
  if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
  if (sigma && !(*sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
}

}  // namespace cavif
