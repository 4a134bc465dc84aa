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

#include "cavif/io.hpp"

#include <fstream>
#include <stdexcept>

namespace cavif::io {

namespace {

json optional_number(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

}  // namespace

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << contents;
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

std::string kernel_spectrum_csv(std::string_view name, const Kerneld& kernel, KernelConvention convention) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& l : kernel.spectrum())
    rows.push_back({format_double(l.frequency), format_double(l.cos_amplitude), format_double(l.sin_amplitude),
                    std::string(name), to_string(convention)});
  return csv({"frequency", "cos_amp", "sin_amp", "kernel", "convention"}, rows);
}

std::string kernel_series_csv(const Kerneld& kernel, const TimeGrid& grid) {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t n = 0; n < grid.size; ++n) {
    const double t = grid.time(n);
    rows.push_back({format_double(t), format_double(kernel(t))});
  }
  return csv({"t", "value"}, rows);
}

std::string noise_path_csv(const Eigen::VectorXd& t, const Eigen::VectorXd& value,
                           const Eigen::VectorXd& derivative) {
  std::vector<std::vector<std::string>> rows;
  for (Eigen::Index i = 0; i < t.size(); ++i)
    rows.push_back({format_double(t[i]), format_double(value[i]), format_double(derivative[i])});
  return csv({"t", "value", "derivative"}, rows);
}

std::string trajectory_csv(const Trajectory& tr, double scale) {
  std::vector<std::vector<std::string>> rows;
  for (Eigen::Index i = 0; i < tr.t.size(); ++i)
    rows.push_back({format_double(tr.t[i]), format_double(scale * tr.q[i]), format_double(scale * tr.v[i])});
  return csv({"t", "q", "v"}, rows);
}

std::string ensemble_csv(const EnsembleResult& r, double scale) {
  const double s2 = scale * scale;
  std::vector<std::vector<std::string>> rows;
  for (Eigen::Index i = 0; i < r.t.size(); ++i)
    rows.push_back({format_double(r.t[i]), format_double(scale * r.mean_q[i]), format_double(s2 * r.var_q[i]),
                    format_double(scale * r.mean_v[i]), format_double(s2 * r.var_v[i]),
                    format_double(s2 * r.autocorrelation_q[i])});
  return csv({"t", "mean_q", "var_q", "mean_v", "var_v", "autocorrelation_q"}, rows);
}

json to_json(const RegularizationReport& r) {
  return {{"cavity_length", r.cavity_length},
          {"temperature", r.temperature},
          {"sigmas", r.sigmas},
          {"regularized", r.regularized},
          {"divergent_part", r.divergent},
          {"differences", r.differences},
          {"richardson_exponents", r.exponents},
          {"tableau", r.tableau},
          {"renormalized", r.renormalized},
          {"error_estimate", r.error_estimate},
          {"order", r.order}};
}

json to_json(const FirstOrderCoefficients& c) {
  return {{"regime", to_string(c.regime)},
          {"force", c.force},
          {"trap_correction", c.trap_correction},
          {"main_text_trap_correction", optional_number(c.main_text_trap_correction)},
          {"notes", c.notes}};
}

json to_json(const FdrReport& r) {
  return {{"k", r.k},
          {"j", r.j},
          {"temperature", r.temperature},
          {"plus_residual", r.plus_residual},
          {"minus_printed_residual", optional_number(r.minus_printed_residual)},
          {"minus_consistent_residual", optional_number(r.minus_consistent_residual)},
          {"zero_t_plus_residual", optional_number(r.zero_t_plus_residual)},
          {"zero_t_minus_residual", optional_number(r.zero_t_minus_residual)},
          {"kubo_plus_relative", optional_number(r.kubo_plus_relative)},
          {"kubo_minus_printed_relative", optional_number(r.kubo_minus_printed_relative)},
          {"kubo_minus_consistent_relative", optional_number(r.kubo_minus_consistent_relative)},
          {"kubo_bound", optional_number(r.kubo_bound)}};
}

json to_json(const DerivativeIntegralReport& r) {
  json ladder = json::array();
  for (const auto& row : r.ladder)
    ladder.push_back({{"truncation", row.truncation},
                      {"rr_sum", row.rr_sum},
                      {"ll_sum", row.ll_sum},
                      {"lr_sum", row.lr_sum},
                      {"rr_residual", row.rr_residual},
                      {"ll_residual", row.ll_residual},
                      {"lr_residual", row.lr_residual},
                      {"lr_transposed_residual", row.lr_transposed_residual}});
  return {{"k", r.k},
          {"j", r.j},
          {"r_closed", r.r_closed},
          {"l_closed", r.l_closed},
          {"r_quadrature", r.r_quadrature},
          {"l_quadrature", r.l_quadrature},
          {"r_residual", r.r_residual},
          {"l_residual", r.l_residual},
          {"r_transposed_quadrature", r.r_transposed_quadrature},
          {"l_transposed_quadrature", r.l_transposed_quadrature},
          {"r_transposed_residual", r.r_transposed_residual},
          {"l_transposed_residual", r.l_transposed_residual},
          {"rr_target", r.rr_target},
          {"ll_target", r.ll_target},
          {"lr_target", r.lr_target},
          {"lr_transposed_target", r.lr_transposed_target},
          {"ladder", ladder},
          {"ladder_monotone", r.ladder_monotone}};
}

json to_json(const EnsembleManifest& m) {
  return {{"seed", m.seed},         {"config_hash", m.config_hash}, {"convention", m.convention},
          {"integrator", m.integrator}, {"memory_mode", m.memory_mode}, {"dt", m.dt},
          {"n_paths", m.n_paths}};
}

json manifest(const RunConfig& cfg) {
  json sections = json::object();
  for (const auto& [name, body] : config_to_sections(cfg, false)) sections[name] = body;
  return {{"tool", "cavif"},
          {"version", "0.1.0"},
          {"command", std::string(to_string(cfg.command))},
          {"config_hash", config_hash(cfg)},
          {"config", sections}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace cavif::io
