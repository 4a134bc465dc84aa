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

#include <complex>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "cavif/trig_sum.hpp"

namespace cavif {

enum class MemoryMode { DirectConvolution, MarkovEmbedding };

std::string_view to_string(MemoryMode m);
MemoryMode parse_memory_mode(std::string_view s);

// Discretized  y(t_n) = int_{t_0}^{t_n} K(t_n - s) u(s) ds  on a uniform grid.
//
// DirectConvolution applies the trapezoid rule to the tabulated kernel.
// MarkovEmbedding carries one complex auxiliary state per line,
// Z = C + iS with C' = u - nu S and S' = nu C, advanced exactly for
// piecewise-linear input.
class MemoryOperator {
 public:
  MemoryOperator(TrigSumd kernel, MemoryMode mode, double dt);

  const TrigSumd& kernel() const { return kernel_; }
  MemoryMode mode() const { return mode_; }
  double dt() const { return dt_; }
  bool empty() const { return kernel_.empty(); }

  // Output at every grid point for the sampled input.
  Eigen::VectorXd apply(const Eigen::VectorXd& input) const;

  // Incremental evaluation for time stepping.
  class State {
   public:
    // Output at the last pushed sample.
    double current() const { return current_; }
    // Output at the next sample if it takes the value u.
    double trial(double u) const;
    void push(double u);
    std::size_t size() const { return count_; }

   private:
    friend class MemoryOperator;
    explicit State(const MemoryOperator* op) : op_(op) {}
    const MemoryOperator* op_;
    std::size_t count_ = 0;
    double current_ = 0.0;
    double last_ = 0.0;
    std::vector<double> history_;
    mutable std::vector<double> table_;  // K(m dt), extended on demand
    std::vector<std::complex<double>> z_;
    double kernel_at(std::size_t m) const;
  };

  State start() const;

 private:
  struct Line {
    double cos_amplitude;
    double sin_amplitude;
    std::complex<double> rotation;  // exp(i nu dt)
    std::complex<double> alpha;     // int_0^dt exp(i nu (dt - s)) ds
    std::complex<double> beta;      // int_0^dt exp(i nu (dt - s)) s / dt ds
  };

  TrigSumd kernel_;
  MemoryMode mode_;
  double dt_;
  std::vector<Line> lines_;
};

}  // namespace cavif
