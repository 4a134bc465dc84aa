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

#include "cavif/langevin.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <Eigen/LU>

#include "cavif/errors.hpp"
#include "cavif/field_kernels.hpp"
#include "cavif/rng.hpp"

namespace cavif {

std::string_view to_string(Dof d) { return d == Dof::Delta ? "delta" : "sigma"; }

Dof parse_dof(std::string_view s) {
  if (s == "delta") return Dof::Delta;
  if (s == "sigma") return Dof::Sigma;
  throw std::invalid_argument("unknown degree of freedom '" + std::string(s) + "'");
}

double LangevinSystem::max_line_frequency() const {
  double nu = std::max(position_memory.max_frequency(), velocity_memory.max_frequency());
  if (position_noise) nu = std::max(nu, position_noise->max_frequency());
  if (velocity_noise) nu = std::max(nu, velocity_noise->max_frequency());
  return nu;
}

LangevinSystem build_system(Dof dof, const PhysicalConfig& cfg, Regime regime,
                            const CompositeKernels& kernels, CouplingSwitches sw) {
  cfg.validate();
  if (kernels.convention != cfg.convention)
    throw std::invalid_argument("kernel convention " + to_string(kernels.convention) +
                                " does not match configured convention " + to_string(cfg.convention));
  LangevinSystem sys;
  sys.dof = dof;
  sys.convention = cfg.convention;
  sys.regime = regime;
  sys.mass = dof == Dof::Delta ? cfg.mass / 4.0 : cfg.mass / 2.0;
  sys.trap_frequency = cfg.trap_frequency;
  sys.temperature = cfg.temperature;

  if (dof == Dof::Delta && sw.first_order) {
    const auto c = first_order_coeffs(cfg, regime);
    sys.static_force = c.force;
    sys.trap_correction = c.trap_correction;
    if (regime == Regime::LowT) {
      if (cfg.convention == KernelConvention::MainText) {
        sys.trap_correction = *c.main_text_trap_correction;
        sys.log.push_back("main_text convention: trap correction 3 pi/16 L0^3");
      } else {
        sys.log.push_back("appendix convention: trap correction pi/16 L0^3 from the f-expansion "
                          "replaces the main-text 3 pi/16 L0^3");
      }
    }
  }
  sys.stiffness = sys.mass * cfg.trap_frequency * cfg.trap_frequency - sys.trap_correction;

  const Kerneld& n_channel = dof == Dof::Delta ? kernels.ndelta : kernels.nsigma;
  const Kerneld& m_channel = dof == Dof::Delta ? kernels.mdelta : kernels.msigma;
  const char* n_name = dof == Dof::Delta ? "ndelta" : "nsigma";
  if (sw.memory) {
    sys.velocity_memory = trig_derivative(m_channel.lines).prune();
    if (dof == Dof::Delta) sys.position_memory = kernels.mbar.lines.prune();
  }
  if (sw.noise) {
    sys.velocity_noise = make_noise_spectrum(
        noise_covariance(n_channel), {n_name, kernels.convention, kernels.contributions_of(n_name)});
    if (dof == Dof::Delta)
      sys.position_noise = make_noise_spectrum(
          noise_covariance(kernels.nbar), {"nbar", kernels.convention, kernels.contributions_of("nbar")});
    for (const auto* s : {&sys.velocity_noise, &sys.position_noise})
      if (*s)
        for (const auto& w : (*s)->warnings) sys.log.push_back(w);
  }
  return sys;
}

LangevinSystem build_system(Dof dof, const PhysicalConfig& cfg, Regime regime, CouplingSwitches sw) {
  return build_system(dof, cfg, regime, composite_kernels(cfg), sw);
}

double max_time_step(const LangevinSystem& sys) {
  double limit = std::numeric_limits<double>::infinity();
  const double two_pi = 2.0 * std::numbers::pi;
  if (sys.trap_frequency > 0.0) limit = std::min(limit, 0.05 * two_pi / sys.trap_frequency);
  const double nu = sys.max_line_frequency();
  if (nu > 0.0) limit = std::min(limit, 0.05 * two_pi / nu);
  return limit;
}

Eigen::VectorXd drive_samples(const LangevinSystem& sys, const NoiseRealization& noise,
                              const TimeGrid& grid) {
  Eigen::VectorXd f = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(grid.size), sys.static_force);
  for (std::size_t n = 0; n < grid.size; ++n) {
    const double t = grid.time(n);
    if (noise.velocity) f[static_cast<Eigen::Index>(n)] += noise.velocity->derivative(t);
    if (noise.position) f[static_cast<Eigen::Index>(n)] -= noise.position->value(t);
  }
  return f;
}

Trajectory integrate(const LangevinSystem& sys, PhaseState initial, const TimeGrid& grid,
                     const Eigen::VectorXd& drive, MemoryMode mode) {
  if (grid.empty()) throw std::invalid_argument("integration grid is empty");
  if (drive.size() != static_cast<Eigen::Index>(grid.size))
    throw std::invalid_argument("drive and grid sizes differ");
  const double dt = grid.dt;
  const double dt_max = max_time_step(sys);
  if (grid.size > 1 && dt > dt_max * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "time step " << dt << " exceeds the stability limit; use dt <= " << dt_max;
    throw StepSizeError(os.str(), dt_max);
  }

  const double m = sys.mass, k = sys.stiffness;
  const double step = grid.size > 1 ? dt : 1.0;
  const MemoryOperator pos_op(sys.position_memory, mode, step);
  const MemoryOperator vel_op(sys.velocity_memory, mode, step);
  auto pos = pos_op.start();
  auto vel = vel_op.start();

  Trajectory tr{grid.times(), Eigen::VectorXd(grid.times().size()), Eigen::VectorXd(grid.times().size())};
  double q = initial.q, v = initial.v;
  tr.q[0] = q;
  tr.v[0] = v;
  pos.push(q);
  vel.push(v);
  auto accel = [&](double qq, double pq, double pv, double f) {
    return (f - k * qq - kHbar * pv + kHbar * pq) / m;
  };
  for (std::size_t n = 0; n + 1 < grid.size; ++n) {
    const auto i = static_cast<Eigen::Index>(n);
    const double a = accel(q, pos.current(), vel.current(), drive[i]);
    const double q_pred = q + dt * v;
    const double v_pred = v + dt * a;
    const double a_pred = accel(q_pred, pos.trial(q_pred), vel.trial(v_pred), drive[i + 1]);
    q += 0.5 * dt * (v + v_pred);
    v += 0.5 * dt * (a + a_pred);
    if (!std::isfinite(q) || !std::isfinite(v)) {
      std::ostringstream os;
      os << "trajectory diverged at t = " << grid.time(n + 1);
      throw DivergenceError(os.str(), grid.time(n + 1));
    }
    pos.push(q);
    vel.push(v);
    tr.q[i + 1] = q;
    tr.v[i + 1] = v;
  }
  return tr;
}

double fixed_point(const LangevinSystem& sys) {
  const auto pos_lines = trig_line_spectrum(sys.position_memory);
  const auto vel_lines = trig_line_spectrum(sys.velocity_memory);
  // State (q, v, aux...), each line with frequency > 0 owning (C, S).
  Eigen::Index n = 2;
  for (const auto* lines : {&pos_lines, &vel_lines})
    for (const auto& l : *lines) n += l.frequency > 0.0 ? 2 : 1;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  A(0, 1) = 1.0;
  A(1, 0) = -sys.stiffness / sys.mass;
  b[1] = sys.static_force / sys.mass;
  Eigen::Index row = 2;
  auto embed = [&](const std::vector<SpectralLine<double>>& lines, Eigen::Index input, double sign) {
    for (const auto& l : lines) {
      const Eigen::Index c = row;
      A(c, input) = 1.0;
      A(1, c) += sign * kHbar * l.cos_amplitude / sys.mass;
      if (l.frequency > 0.0) {
        const Eigen::Index s = row + 1;
        A(c, s) = -l.frequency;
        A(s, c) = l.frequency;
        A(1, s) += sign * kHbar * l.sin_amplitude / sys.mass;
        row += 2;
      } else {
        row += 1;
      }
    }
  };
  embed(pos_lines, 0, +1.0);
  embed(vel_lines, 1, -1.0);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (!lu.isInvertible()) throw std::runtime_error("embedded system has no isolated equilibrium");
  const Eigen::VectorXd x = lu.solve(-b);
  return x[0];
}

PhaseState sample_initial_wigner(const LangevinSystem& sys, std::mt19937_64& rng) {
  if (!(sys.trap_frequency > 0.0))
    throw DomainError("Wigner initial state requires a positive trap frequency");
  const double w = sys.trap_frequency;
  const double z = thermal_factor(w, sys.temperature);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double sq = std::sqrt(kHbar * z / (2.0 * sys.mass * w));
  const double sv = std::sqrt(kHbar * w * z / (2.0 * sys.mass));
  const double q = sq * normal(rng);
  const double v = sv * normal(rng);
  return {q, v};
}

NoiseRealization draw_noise(const LangevinSystem& sys, std::uint64_t seed, std::uint64_t path) {
  NoiseRealization r;
  if (sys.position_noise) {
    auto rng = make_stream(seed, path, StreamTag::PositionNoise);
    r.position = NoiseProcess(*sys.position_noise, rng);
  }
  if (sys.velocity_noise) {
    auto rng = make_stream(seed, path, StreamTag::VelocityNoise);
    r.velocity = NoiseProcess(*sys.velocity_noise, rng);
  }
  return r;
}

namespace {

// Running moments of one block of paths, combined pairwise.
struct Moments {
  double count = 0.0;
  Eigen::VectorXd mean_q, m2_q, mean_v, m2_v, co_q;

  explicit Moments(Eigen::Index n)
      : mean_q(Eigen::VectorXd::Zero(n)),
        m2_q(Eigen::VectorXd::Zero(n)),
        mean_v(Eigen::VectorXd::Zero(n)),
        m2_v(Eigen::VectorXd::Zero(n)),
        co_q(Eigen::VectorXd::Zero(n)) {}

  void add(const Trajectory& tr) {
    count += 1.0;
    const Eigen::VectorXd dq = tr.q - mean_q;
    const Eigen::VectorXd dv = tr.v - mean_v;
    const double dq0 = dq[0];
    mean_q += dq / count;
    mean_v += dv / count;
    m2_q.array() += dq.array() * (tr.q - mean_q).array();
    m2_v.array() += dv.array() * (tr.v - mean_v).array();
    co_q += dq0 * (tr.q - mean_q);
  }

  void merge(const Moments& o) {
    if (o.count == 0.0) return;
    const double n = count + o.count;
    const Eigen::VectorXd dq = o.mean_q - mean_q;
    const Eigen::VectorXd dv = o.mean_v - mean_v;
    const double w = count * o.count / n;
    m2_q.array() += o.m2_q.array() + dq.array().square() * w;
    m2_v.array() += o.m2_v.array() + dv.array().square() * w;
    co_q += o.co_q + dq[0] * dq * w;
    mean_q += dq * (o.count / n);
    mean_v += dv * (o.count / n);
    count = n;
  }
};

}  // namespace

EnsembleResult run_ensemble(const LangevinSystem& sys, std::size_t n_paths, const TimeGrid& grid,
                            std::uint64_t seed, const EnsembleOptions& opts) {
  if (n_paths < 1) throw std::invalid_argument("ensemble needs at least one path");
  if (grid.empty()) throw std::invalid_argument("integration grid is empty");
  if (opts.block_size < 1) throw std::invalid_argument("block size must be positive");
  const double dt_max = max_time_step(sys);
  if (grid.size > 1 && grid.dt > dt_max * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "time step " << grid.dt << " exceeds the stability limit; use dt <= " << dt_max;
    throw StepSizeError(os.str(), dt_max);
  }

  const auto n = static_cast<Eigen::Index>(grid.size);
  const std::size_t n_blocks = (n_paths + opts.block_size - 1) / opts.block_size;
  std::vector<Moments> blocks(n_blocks, Moments(n));
  std::vector<std::exception_ptr> errors(n_blocks);
  Trajectory first;

  auto run_path = [&](std::size_t p) {
    PhaseState init = opts.fixed_state;
    if (opts.initial == InitialCondition::Wigner) {
      auto rng = make_stream(seed, p, StreamTag::InitialState);
      init = sample_initial_wigner(sys, rng);
    }
    const auto noise = draw_noise(sys, seed, p);
    return integrate(sys, init, grid, drive_samples(sys, noise, grid), opts.mode);
  };

  auto run_block = [&](std::size_t b) {
    const std::size_t begin = b * opts.block_size;
    const std::size_t end = std::min(n_paths, begin + opts.block_size);
    std::size_t p = begin;
    try {
      for (; p < end; ++p) {
        Trajectory tr = run_path(p);
        blocks[b].add(tr);
        if (p == 0) first = std::move(tr);
      }
    } catch (const DivergenceError& e) {
      errors[b] = std::make_exception_ptr(
          DivergenceError("path " + std::to_string(p) + ": " + e.what(), e.time()));
    } catch (const std::exception& e) {
      errors[b] = std::make_exception_ptr(std::runtime_error("path " + std::to_string(p) + ": " + e.what()));
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(n_blocks)));
  if (threads == 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) run_block(b);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t b = next++; b < n_blocks; b = next++) run_block(b);
      });
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  Moments total(n);
  for (const auto& b : blocks) total.merge(b);

  EnsembleResult r;
  r.t = grid.times();
  r.mean_q = total.mean_q;
  r.mean_v = total.mean_v;
  const double denom = total.count > 1.0 ? total.count - 1.0 : 1.0;
  r.var_q = total.m2_q / denom;
  r.var_v = total.m2_v / denom;
  r.autocorrelation_q = total.co_q / denom;
  r.first_path = std::move(first);
  r.manifest.seed = seed;
  r.manifest.convention = to_string(sys.convention);
  r.manifest.integrator = "heun";
  r.manifest.memory_mode = std::string(to_string(opts.mode));
  r.manifest.dt = grid.dt;
  r.manifest.n_paths = n_paths;
  return r;
}

}  // namespace cavif
