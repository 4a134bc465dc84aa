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

#include "cavif/memory.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cavif {

namespace {

using cplx = std::complex<double>;

// alpha = dt sum (i theta)^n/(n+1)!, beta = dt sum (i theta)^n/(n+2)!
void small_angle(double theta, double dt, cplx& alpha, cplx& beta) {
  cplx term_a = 1.0, term_b = 0.5;
  alpha = 0.0;
  beta = 0.0;
  const cplx it(0.0, theta);
  for (int n = 0; n < 30; ++n) {
    alpha += term_a;
    beta += term_b;
    term_a *= it / double(n + 2);
    term_b *= it / double(n + 3);
  }
  alpha *= dt;
  beta *= dt;
}

}  // namespace

std::string_view to_string(MemoryMode m) {
  return m == MemoryMode::DirectConvolution ? "direct_convolution" : "markov_embedding";
}

MemoryMode parse_memory_mode(std::string_view s) {
  if (s == "direct_convolution") return MemoryMode::DirectConvolution;
  if (s == "markov_embedding") return MemoryMode::MarkovEmbedding;
  throw std::invalid_argument("unknown memory mode '" + std::string(s) + "'");
}

MemoryOperator::MemoryOperator(TrigSumd kernel, MemoryMode mode, double dt)
    : kernel_(std::move(kernel)), mode_(mode), dt_(dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("memory operator needs a positive time step");
  for (const auto& line : trig_line_spectrum(kernel_)) {
    const double theta = line.frequency * dt;
    Line l{line.cos_amplitude, line.sin_amplitude, std::polar(1.0, theta), 0.0, 0.0};
    if (theta < 0.5) {
      small_angle(theta, dt, l.alpha, l.beta);
    } else {
      const cplx inu(0.0, line.frequency);
      l.alpha = (l.rotation - 1.0) / inu;
      l.beta = l.alpha - l.rotation / inu + (l.rotation - 1.0) / (inu * inu * dt);
    }
    lines_.push_back(l);
  }
}

MemoryOperator::State MemoryOperator::start() const {
  State s(this);
  if (mode_ == MemoryMode::MarkovEmbedding) s.z_.assign(lines_.size(), cplx(0.0, 0.0));
  return s;
}

double MemoryOperator::State::kernel_at(std::size_t m) const {
  while (table_.size() <= m) table_.push_back(op_->kernel_(static_cast<double>(table_.size()) * op_->dt_));
  return table_[m];
}

double MemoryOperator::State::trial(double u) const {
  if (count_ == 0 || op_->lines_.empty()) return 0.0;
  if (op_->mode_ == MemoryMode::DirectConvolution) {
    const std::size_t n = count_;
    double acc = 0.5 * kernel_at(n) * history_[0] + 0.5 * kernel_at(0) * u;
    for (std::size_t i = 1; i < n; ++i) acc += kernel_at(n - i) * history_[i];
    return op_->dt_ * acc;
  }
  double y = 0.0;
  for (std::size_t p = 0; p < op_->lines_.size(); ++p) {
    const auto& l = op_->lines_[p];
    const cplx z = l.rotation * z_[p] + l.alpha * last_ + l.beta * (u - last_);
    y += l.cos_amplitude * z.real() + l.sin_amplitude * z.imag();
  }
  return y;
}

void MemoryOperator::State::push(double u) {
  if (count_ > 0 && !op_->lines_.empty()) {
    if (op_->mode_ == MemoryMode::DirectConvolution) {
      current_ = trial(u);
    } else {
      double y = 0.0;
      for (std::size_t p = 0; p < op_->lines_.size(); ++p) {
        const auto& l = op_->lines_[p];
        z_[p] = l.rotation * z_[p] + l.alpha * last_ + l.beta * (u - last_);
        y += l.cos_amplitude * z_[p].real() + l.sin_amplitude * z_[p].imag();
      }
      current_ = y;
    }
  }
  if (op_->mode_ == MemoryMode::DirectConvolution) history_.push_back(u);
  last_ = u;
  ++count_;
}

Eigen::VectorXd MemoryOperator::apply(const Eigen::VectorXd& input) const {
  Eigen::VectorXd out(input.size());
  State s = start();
  for (Eigen::Index n = 0; n < input.size(); ++n) {
    s.push(input[n]);
    out[n] = s.current();
  }
  return out;
}

}  // namespace cavif
