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

#include "cavif/commands.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cavif/casimir.hpp"
#include "cavif/errors.hpp"
#include "cavif/influence_kernels.hpp"
#include "cavif/io.hpp"
#include "cavif/langevin.hpp"
#include "cavif/mode_basis.hpp"
#include "cavif/noise.hpp"
#include "cavif/rng.hpp"

namespace cavif {

namespace {

using io::json;

constexpr std::size_t kMaxNoiseGrid = 1024;

class Output {
 public:
  Output(const RunConfig& cfg, const CommandOptions& opts) : opts_(opts) {
    result_.directory = cfg.output_directory;
    std::error_code ec;
    std::filesystem::create_directories(result_.directory, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + result_.directory.string() + ": " + ec.message());
  }

  void write(const std::string& name, const std::string& contents) {
    io::write_file(result_.directory / name, contents);
    result_.files.push_back(name);
  }

  void log(const std::string& line) const {
    if (opts_.log) *opts_.log << line << "\n";
  }

  CommandResult& result() { return result_; }

 private:
  const CommandOptions& opts_;
  CommandResult result_;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

json first_order_report(const PhysicalConfig& p, Regime regime) {
  try {
    return io::to_json(first_order_coeffs(p, regime));
  } catch (const std::invalid_argument& e) {
    return {{"regime", to_string(regime)}, {"unavailable", e.what()}};
  }
}

void cmd_kernels(const RunConfig& cfg, Output& out) {
  const auto ck = composite_kernels(cfg.physical);
  const TimeGrid grid = cfg.time_grid();
  for (auto name : CompositeKernels::kNames) {
    const auto& k = ck.get(name);
    out.write("kernel_" + std::string(name) + ".csv", io::kernel_spectrum_csv(name, k, ck.convention));
    if (!grid.empty()) out.write("series_" + std::string(name) + ".csv", io::kernel_series_csv(k, grid));
  }
  json report = {{"convention", to_string(ck.convention)},
                 {"k_max", cfg.physical.k_max},
                 {"temperature", cfg.physical.temperature},
                 {"warnings", ck.warnings},
                 {"first_order", first_order_report(cfg.physical, cfg.simulate.regime)}};
  out.write("build_report.json", io::dump(report));
  for (const auto& w : ck.warnings) out.log("warning: " + w);
  out.log("kernels written for k_max = " + std::to_string(cfg.physical.k_max));
}

void cmd_fdr(const RunConfig& cfg, Output& out) {
  const double tol = cfg.check.fdr_tolerance;
  std::vector<std::vector<std::string>> rows;
  json pairs = json::array();
  int failures = 0;
  auto opt = [](const std::optional<double>& x) { return x ? format_double(*x) : std::string(); };
  for (int k = 1; k <= cfg.physical.k_max; ++k) {
    for (int j = 1; j <= cfg.physical.k_max; ++j) {
      if (k == j) continue;
      const auto r = fdr_check(k, j, cfg.physical);
      bool pass = true;
      if (cfg.physical.temperature > 0.0)
        pass = r.plus_residual <= tol && *r.minus_printed_residual <= tol;
      else
        pass = *r.zero_t_plus_residual <= tol && *r.zero_t_minus_residual <= tol;
      failures += pass ? 0 : 1;
      rows.push_back({std::to_string(k), std::to_string(j), format_double(r.temperature),
                      format_double(r.plus_residual), opt(r.minus_printed_residual),
                      opt(r.minus_consistent_residual), opt(r.zero_t_plus_residual), opt(r.zero_t_minus_residual),
                      opt(r.kubo_plus_relative), opt(r.kubo_minus_printed_relative),
                      opt(r.kubo_minus_consistent_relative), opt(r.kubo_bound), pass ? "true" : "false"});
      json jr = io::to_json(r);
      jr["pass"] = pass;
      pairs.push_back(jr);
    }
  }
  out.write("fdr.csv", io::csv({"k", "j", "temperature", "plus_residual", "minus_printed_residual",
                                "minus_consistent_residual", "zero_t_plus_residual", "zero_t_minus_residual",
                                "kubo_plus_relative", "kubo_minus_printed_relative",
                                "kubo_minus_consistent_relative", "kubo_bound", "pass"},
                               rows));
  out.write("fdr_report.json", io::dump({{"tolerance", tol}, {"failures", failures}, {"pairs", pairs}}));
  out.log("fdr: " + std::to_string(failures) + " of " + std::to_string(rows.size()) + " pairs above tolerance " +
          fmt(tol));
  if (failures) out.result().exit_code = kExitTolerance;
}

void cmd_casimir(const RunConfig& cfg, Output& out) {
  const auto& p = cfg.physical;
  const auto [value, rep] = renormalized_energy_density(p);
  json j = {{"renormalized_energy_density", value}, {"report", io::to_json(rep)}};
  const double L0 = p.cavity_length;
  // Derived action prefactor -(1/2) eps L0 times the f-expansion.
  const auto f = f_expansion(L0, 2);
  const double prefactor = -0.5 * value * L0;
  j["derived_linear_coefficient"] = prefactor * f[1];
  j["derived_quadratic_coefficient"] = prefactor * f[2];
  if (p.sigma) j["regularized_at_sigma"] = {{"sigma", *p.sigma}, {"value", regularized_energy_density(*p.sigma, p)}};
  bool pass = true;
  if (p.temperature == 0.0) {
    const double exact = -std::numbers::pi / (24.0 * L0 * L0);
    const double rel = std::abs(value - exact) / std::abs(exact);
    pass = rel < cfg.check.casimir_tolerance;
    j["reference"] = exact;
    j["relative_error"] = rel;
    j["tolerance"] = cfg.check.casimir_tolerance;
    j["first_order"] = first_order_report(p, Regime::LowT);
  } else {
    const double printed = p.temperature / (2.0 * L0);
    j["printed_high_t_linear_coefficient"] = printed;
    j["high_t_sign_mismatch"] = (prefactor * f[1]) * printed < 0.0;
    j["first_order"] = first_order_report(p, Regime::HighT);
  }
  j["pass"] = pass;
  out.write("casimir.json", io::dump(j));
  out.log("casimir: renormalized energy density " + format_double(value));
  if (!pass) out.result().exit_code = kExitTolerance;
}

void cmd_basis_check(const RunConfig& cfg, Output& out) {
  const auto& c = cfg.check;
  std::vector<std::vector<std::string>> rows, ladder_rows;
  json pairs = json::array();
  int failures = 0;
  for (int k = 1; k <= c.basis_max_index; ++k) {
    for (int j = 1; j <= c.basis_max_index; ++j) {
      const double ov = mode_overlap(k, j, 0.0, 1.0, c.quadrature_tolerance).value;
      const double ov_res = std::abs(ov - (k == j ? 1.0 : 0.0));
      const auto r = verify_derivative_integrals(k, j, c.quadrature_tolerance, c.ladder);
      const bool pass = ov_res <= c.orthonormality_tolerance && r.r_residual <= c.basis_tolerance &&
                        r.l_residual <= c.basis_tolerance && r.ladder_monotone;
      failures += pass ? 0 : 1;
      rows.push_back({std::to_string(k), std::to_string(j), format_double(ov_res), format_double(r.r_closed),
                      format_double(r.r_quadrature), format_double(r.r_residual), format_double(r.l_closed),
                      format_double(r.l_quadrature), format_double(r.l_residual),
                      format_double(r.r_transposed_residual), format_double(r.l_transposed_residual),
                      r.ladder_monotone ? "true" : "false", pass ? "true" : "false"});
      for (const auto& row : r.ladder)
        ladder_rows.push_back({std::to_string(k), std::to_string(j), std::to_string(row.truncation),
                               format_double(row.rr_residual), format_double(row.ll_residual),
                               format_double(row.lr_residual), format_double(row.lr_transposed_residual)});
      json jr = io::to_json(r);
      jr["overlap_residual"] = ov_res;
      jr["pass"] = pass;
      pairs.push_back(jr);
    }
  }
  out.write("basis.csv", io::csv({"k", "j", "overlap_residual", "r_closed", "r_quadrature", "r_residual",
                                  "l_closed", "l_quadrature", "l_residual", "r_transposed_residual",
                                  "l_transposed_residual", "ladder_monotone", "pass"},
                                 rows));
  out.write("completeness.csv", io::csv({"k", "j", "truncation", "rr_residual", "ll_residual", "lr_residual",
                                         "lr_transposed_residual"},
                                        ladder_rows));
  out.write("basis_report.json", io::dump({{"failures", failures}, {"pairs", pairs}}));
  out.log("basis-check: " + std::to_string(failures) + " of " + std::to_string(rows.size()) +
          " pairs outside tolerance");
  if (failures) out.result().exit_code = kExitTolerance;
}

void cmd_noise(const RunConfig& cfg, Output& out) {
  const TimeGrid grid = cfg.time_grid();
  if (grid.empty()) throw ConfigError("noise validation needs a non-empty grid");
  if (grid.size > kMaxNoiseGrid)
    throw ConfigError("noise validation grid has " + std::to_string(grid.size) + " points; at most " +
                      std::to_string(kMaxNoiseGrid) + " are supported");
  const auto ck = composite_kernels(cfg.physical);
  const Kerneld cov = noise_covariance(ck.get(cfg.noise.kernel));
  const NoiseSpectrum spectrum =
      make_noise_spectrum(cov, {cfg.noise.kernel, ck.convention, ck.contributions_of(cfg.noise.kernel)});
  const Eigen::VectorXd t = grid.times();
  const auto n_paths = static_cast<Eigen::Index>(cfg.ensemble.paths);
  Eigen::MatrixXd paths(n_paths, t.size());
  Eigen::VectorXd first_value, first_derivative;
  for (Eigen::Index p = 0; p < n_paths; ++p) {
    auto rng = make_stream(cfg.ensemble.seed, static_cast<std::uint64_t>(p), StreamTag::Noise);
    const NoiseProcess proc(spectrum, rng);
    paths.row(p) = sample_path(proc, t).transpose();
    if (p == 0) {
      first_value = paths.row(0).transpose();
      first_derivative = sample_derivative(proc, t);
    }
  }
  out.write("noise_paths.csv", io::noise_path_csv(t, first_value, first_derivative));
  const auto rep = empirical_covariance(paths, t, cov);
  std::vector<std::vector<std::string>> rows;
  for (Eigen::Index i = 0; i < t.size(); ++i)
    for (Eigen::Index j = 0; j < t.size(); ++j)
      rows.push_back({format_double(t[i]), format_double(t[j]), format_double(rep.covariance(i, j)),
                      format_double(rep.target(i, j)), format_double(rep.standard_error(i, j))});
  out.write("noise_covariance.csv", io::csv({"t1", "t2", "empirical", "target", "standard_error"}, rows));
  const bool pass = rep.max_studentized < cfg.noise.max_studentized;
  json lines = json::array();
  for (const auto& l : spectrum.lines) lines.push_back({{"frequency", l.frequency}, {"weight", l.weight}});
  out.write("noise_report.json",
            io::dump({{"kernel", cfg.noise.kernel},
                      {"paths", cfg.ensemble.paths},
                      {"grid_points", grid.size},
                      {"lines", lines},
                      {"constant_weight", spectrum.constant_weight},
                      {"warnings", spectrum.warnings},
                      {"max_studentized_deviation", rep.max_studentized},
                      {"worst_entry", {rep.worst_row, rep.worst_col}},
                      {"threshold", cfg.noise.max_studentized},
                      {"pass", pass}}));
  out.log("noise: max studentized deviation " + fmt(rep.max_studentized));
  if (!pass) out.result().exit_code = kExitTolerance;
}

void cmd_simulate(const RunConfig& cfg, const CommandOptions& opts, Output& out) {
  const TimeGrid grid = cfg.time_grid();
  if (grid.empty()) throw ConfigError("simulate needs a non-empty grid");
  const auto& s = cfg.simulate;
  const auto sys = build_system(s.dof, cfg.physical, s.regime, CouplingSwitches{s.memory, s.noise, s.first_order});
  EnsembleOptions eo;
  eo.mode = s.memory_mode;
  eo.initial = s.initial;
  eo.fixed_state = {s.q0, s.v0};
  eo.threads = opts.threads;
  auto r = run_ensemble(sys, cfg.ensemble.paths, grid, cfg.ensemble.seed, eo);
  r.manifest.config_hash = config_hash(cfg);
  out.write("ensemble.csv", io::ensemble_csv(r, s.scale));
  out.write("trajectory.csv", io::trajectory_csv(r.first_path, s.scale));
  json report = {{"dof", std::string(to_string(sys.dof))},
                 {"effective_mass", sys.mass},
                 {"stiffness", sys.stiffness},
                 {"trap_correction", sys.trap_correction},
                 {"static_force", sys.static_force},
                 {"max_time_step", max_time_step(sys)},
                 {"log", sys.log},
                 {"ensemble", io::to_json(r.manifest)}};
  try {
    report["fixed_point"] = fixed_point(sys);
  } catch (const std::exception& e) {
    report["fixed_point"] = nullptr;
  }
  out.write("simulate_report.json", io::dump(report));
  out.log("simulate: " + std::to_string(cfg.ensemble.paths) + " paths, " + std::to_string(grid.size) +
          " grid points");
}

}  // namespace

CommandResult run_command(const RunConfig& cfg, const CommandOptions& opts) {
  cfg.validate();
  Output out(cfg, opts);
  json m = io::manifest(cfg);
  if (cfg.command == Command::Simulate) {
    EnsembleManifest em;
    em.seed = cfg.ensemble.seed;
    em.config_hash = config_hash(cfg);
    em.convention = to_string(cfg.physical.convention);
    em.integrator = "heun";
    em.memory_mode = std::string(to_string(cfg.simulate.memory_mode));
    em.dt = cfg.grid.dt;
    em.n_paths = cfg.ensemble.paths;
    m["ensemble"] = io::to_json(em);
  }
  out.write("manifest.json", io::dump(m));
  switch (cfg.command) {
    case Command::Kernels:
      cmd_kernels(cfg, out);
      break;
    case Command::Fdr:
      cmd_fdr(cfg, out);
      break;
    case Command::Casimir:
      cmd_casimir(cfg, out);
      break;
    case Command::BasisCheck:
      cmd_basis_check(cfg, out);
      break;
    case Command::Noise:
      cmd_noise(cfg, out);
      break;
    case Command::Simulate:
      cmd_simulate(cfg, opts, out);
      break;
  }
  return out.result();
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const StepSizeError*>(&e)) return kExitUsage;
  if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::out_of_range*>(&e))
    return kExitUsage;
  if (dynamic_cast<const DivergenceError*>(&e) || dynamic_cast<const NotPsdError*>(&e) ||
      dynamic_cast<const ConvergenceError*>(&e))
    return kExitTolerance;
  return kExitUsage;
}

}  // namespace cavif
