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

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include <Eigen/Core>

namespace cavif {

// Uniform time grid t_n = t_initial + n dt, n = 0..size-1.
struct TimeGrid {
  double t_initial = 0.0;
  double dt = 0.0;
  std::size_t size = 0;

  static TimeGrid from_range(double t_initial, double t_final, double dt) {
    if (!(dt > 0.0) || !(t_final > t_initial)) return {t_initial, dt, 0};
    const auto steps = static_cast<std::size_t>(std::floor((t_final - t_initial) / dt + 1e-9));
    return {t_initial, dt, steps + 1};
  }

  bool empty() const { return size == 0; }
  double time(std::size_t n) const { return t_initial + static_cast<double>(n) * dt; }
  Eigen::VectorXd times() const {
    Eigen::VectorXd t(static_cast<Eigen::Index>(size));
    for (std::size_t n = 0; n < size; ++n) t[static_cast<Eigen::Index>(n)] = time(n);
    return t;
  }
};

}  // namespace cavif
