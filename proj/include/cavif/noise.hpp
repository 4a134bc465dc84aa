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
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "cavif/config.hpp"
#include "cavif/influence_kernels.hpp"
#include "cavif/trig_sum.hpp"

namespace cavif {

struct NoiseLine {
  double frequency;
  double weight;  // c_p >= 0
};

// Where a covariance kernel came from, for error messages.
struct NoiseProvenance {
  std::string label;
  std::optional<KernelConvention> convention;
  std::vector<PairContribution> contributions;
};

// Validated line spectrum of a stationary covariance C(dt).
struct NoiseSpectrum {
  std::vector<NoiseLine> lines;
  double constant_weight = 0.0;
  std::vector<std::string> warnings;

  double covariance(double dt) const;
  double variance() const { return covariance(0.0); }
  // Var of the time derivative, sum_p c_p nu_p^2.
  double derivative_variance() const;
  double max_frequency() const;
};

// Amplitudes in [-kClipTolerance, 0) are clipped with a warning.
inline constexpr double kClipTolerance = 1e-12;

NoiseSpectrum make_noise_spectrum(const Kerneld& covariance, const NoiseProvenance& prov = {});

// Covariance -hbar^2 N of the force generated by a noise kernel N.
Kerneld noise_covariance(const Kerneld& noise_kernel);

struct SpectralDraw {
  double frequency;
  double scale;  // sqrt(c_p)
  double a;
  double b;
};

// One realization of a stationary Gaussian process with a line spectrum:
// X(t) = sum_p sqrt(c_p)(A_p cos nu_p t + B_p sin nu_p t) + sqrt(c_0) A_0.
class NoiseProcess {
 public:
  NoiseProcess() = default;
  NoiseProcess(const NoiseSpectrum& spectrum, std::mt19937_64& rng);

  double value(double t) const;
  double derivative(double t) const;

  const std::vector<SpectralDraw>& draws() const { return draws_; }
  double constant_scale() const { return constant_scale_; }
  double constant_draw() const { return a0_; }

 private:
  std::vector<SpectralDraw> draws_;
  double constant_scale_ = 0.0;
  double a0_ = 0.0;
};

struct BuiltProcess {
  NoiseSpectrum spectrum;
  NoiseProcess process;
  std::uint64_t seed;
  std::uint64_t stream;
};

BuiltProcess build_process(const Kerneld& covariance, std::uint64_t seed, std::uint64_t stream = 0,
                           const NoiseProvenance& prov = {});

Eigen::VectorXd sample_path(const NoiseProcess& process, const Eigen::VectorXd& grid);
Eigen::VectorXd sample_derivative(const NoiseProcess& process, const Eigen::VectorXd& grid);

struct CovarianceReport {
  Eigen::MatrixXd covariance;
  Eigen::MatrixXd target;
  Eigen::MatrixXd standard_error;
  double max_studentized = 0.0;
  Eigen::Index worst_row = 0;
  Eigen::Index worst_col = 0;
};

// Rows of paths are realizations sampled on grid. The processes are
// zero-mean by construction, so second moments are taken about zero.
CovarianceReport empirical_covariance(const Eigen::MatrixXd& paths, const Eigen::VectorXd& grid,
                                      const Kerneld& target);

// Reference sampler factorizing the grid covariance matrix directly.
class DenseGaussianSampler {
 public:
  DenseGaussianSampler(const Kerneld& covariance, const Eigen::VectorXd& grid);
  Eigen::VectorXd sample(std::mt19937_64& rng) const;
  const Eigen::MatrixXd& factor() const { return factor_; }
  double clipped_eigenvalue_mass() const { return clipped_; }

 private:
  Eigen::MatrixXd factor_;
  double clipped_ = 0.0;
};

}  // namespace cavif
