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
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "cavif/config.hpp"
#include "cavif/grid.hpp"
#include "cavif/influence_kernels.hpp"
#include "cavif/memory.hpp"
#include "cavif/noise.hpp"

namespace cavif {

enum class Dof { Delta, Sigma };

std::string_view to_string(Dof d);
Dof parse_dof(std::string_view s);

// Which parts of the field coupling enter the equation of motion.
struct CouplingSwitches {
  bool memory = true;
  bool noise = true;
  bool first_order = true;

  static CouplingSwitches none() { return {false, false, false}; }
};

// m q'' + k q + hbar int Mdot(t-s) q'(s) ds - hbar int Mbar(t-s) q(s) ds
//   = F + eta'(t) - xi(t)
struct LangevinSystem {
  Dof dof = Dof::Delta;
  KernelConvention convention = KernelConvention::Appendix;
  Regime regime = Regime::LowT;
  double mass = 0.0;            // M/4 or M/2
  double trap_frequency = 0.0;  // Omega
  double temperature = 0.0;
  double trap_correction = 0.0;
  double stiffness = 0.0;       // m Omega^2 - trap_correction
  double static_force = 0.0;
  TrigSumd position_memory;     // Mbar, Delta only
  TrigSumd velocity_memory;     // time derivative of M_Delta or M_Sigma
  std::optional<NoiseSpectrum> position_noise;  // xi
  std::optional<NoiseSpectrum> velocity_noise;  // eta, enters through its derivative
  std::vector<std::string> log;

  double max_line_frequency() const;
};

LangevinSystem build_system(Dof dof, const PhysicalConfig& cfg, Regime regime,
                            const CompositeKernels& kernels, CouplingSwitches sw = {});
LangevinSystem build_system(Dof dof, const PhysicalConfig& cfg, Regime regime,
                            CouplingSwitches sw = {});

struct PhaseState {
  double q = 0.0;
  double v = 0.0;
};

struct Trajectory {
  Eigen::VectorXd t;
  Eigen::VectorXd q;
  Eigen::VectorXd v;
};

// Largest step accepted for the system, 0.05 min(2 pi / Omega, 2 pi / nu_max).
double max_time_step(const LangevinSystem& sys);

// Right-hand side F + eta'(t_n) - xi(t_n) for one noise realization.
struct NoiseRealization {
  std::optional<NoiseProcess> position;
  std::optional<NoiseProcess> velocity;
};

Eigen::VectorXd drive_samples(const LangevinSystem& sys, const NoiseRealization& noise,
                              const TimeGrid& grid);

// Heun predictor-corrector on (q, v); memory integrals start at the first
// grid point. drive holds the full right-hand side at each grid point.
Trajectory integrate(const LangevinSystem& sys, PhaseState initial, const TimeGrid& grid,
                     const Eigen::VectorXd& drive, MemoryMode mode);

// Stationary point of the noise-free dynamics with memory fully developed,
// from the linear equilibrium of the embedded system.
double fixed_point(const LangevinSystem& sys);

// Thermal Wigner function of the bare oscillator (mass, Omega, T).
PhaseState sample_initial_wigner(const LangevinSystem& sys, std::mt19937_64& rng);

NoiseRealization draw_noise(const LangevinSystem& sys, std::uint64_t seed, std::uint64_t path);

enum class InitialCondition { Wigner, Fixed };

struct EnsembleOptions {
  MemoryMode mode = MemoryMode::MarkovEmbedding;
  InitialCondition initial = InitialCondition::Wigner;
  PhaseState fixed_state{};
  unsigned threads = 1;
  std::size_t block_size = 16;
};

struct EnsembleManifest {
  std::uint64_t seed = 0;
  std::string config_hash;
  std::string convention;
  std::string integrator;
  std::string memory_mode;
  double dt = 0.0;
  std::size_t n_paths = 0;
};

struct EnsembleResult {
  Eigen::VectorXd t;
  Eigen::VectorXd mean_q;
  Eigen::VectorXd var_q;
  Eigen::VectorXd mean_v;
  Eigen::VectorXd var_v;
  Eigen::VectorXd autocorrelation_q;  // cov(q(t_0), q(t_n))
  Trajectory first_path;
  EnsembleManifest manifest;
};

EnsembleResult run_ensemble(const LangevinSystem& sys, std::size_t n_paths, const TimeGrid& grid,
                            std::uint64_t seed, const EnsembleOptions& opts = {});

}  // namespace cavif
