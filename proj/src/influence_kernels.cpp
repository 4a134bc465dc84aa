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

#include "cavif/influence_kernels.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "cavif/casimir.hpp"
#include "cavif/field_kernels.hpp"

namespace cavif {

namespace {

void check_pair(int k, int j, const PhysicalConfig& cfg) {
  if (k < 1 || j < 1 || k > cfg.k_max || j > cfg.k_max)
    throw std::out_of_range("mode pair out of range");
}

struct Thermal {
  double z;
  double eps;
};

Thermal thermal(int k, const PhysicalConfig& cfg) {
  const double eps = thermal_excess(cfg.mode_frequency(k), cfg.temperature);
  return {1.0 + eps, eps};
}

void record(std::vector<PairContribution>& out, const char* name, int k, int j, char channel,
            const TrigSumd& s) {
  for (const auto& line : trig_line_spectrum(s))
    out.push_back({name, k, j, channel, line.frequency, line.cos_amplitude, line.sin_amplitude});
}

}  // namespace

PairKernelSet pair_kernels(int k, int j, const PhysicalConfig& cfg) {
  check_pair(k, j, cfg);
  const double wk = cfg.mode_frequency(k), wj = cfg.mode_frequency(j);
  const auto [zk, ek] = thermal(k, cfg);
  const auto [zj, ej] = thermal(j, cfg);
  const double zz_minus = ek + ej + ek * ej;  // z_k z_j - 1

  PairKernelSet p{k, j, {}, {}, {}, {}, {}, {}};
  p.nu_plus = TrigSumd::cosine(-(zz_minus + 2.0), wk + wj);
  p.nu_minus = TrigSumd::cosine(-zz_minus, wk - wj);
  p.mu_plus = TrigSumd::sine(zk + zj, wk + wj);
  if (k != j) p.mu_minus = TrigSumd::sine(ek - ej, wk - wj);
  p.gamma_plus = trig_antiderivative(p.mu_plus);
  p.gamma_minus = trig_antiderivative(p.mu_minus);
  return p;
}

const Kerneld& CompositeKernels::get(std::string_view name) const {
  if (name == "nbar") return nbar;
  if (name == "mbar") return mbar;
  if (name == "ndelta") return ndelta;
  if (name == "mdelta") return mdelta;
  if (name == "nsigma") return nsigma;
  if (name == "msigma") return msigma;
  throw std::invalid_argument("unknown kernel '" + std::string(name) + "'");
}

std::vector<PairContribution> CompositeKernels::contributions_of(std::string_view name) const {
  std::vector<PairContribution> out;
  for (const auto& c : contributions)
    if (c.kernel == name) out.push_back(c);
  return out;
}

CompositeKernels composite_kernels(const PhysicalConfig& cfg) {
  cfg.validate();
  CompositeKernels ck;
  ck.convention = cfg.convention;
  const double L2 = cfg.cavity_length * cfg.cavity_length;
  const bool main_text = cfg.convention == KernelConvention::MainText;

  for (int k = 1; k <= cfg.k_max; ++k) {
    const double w = cfg.mode_frequency(k);
    const auto p = pair_kernels(k, k, cfg);
    const double c = w * w / (4.0 * L2);
    const TrigSumd np = c * p.nu_plus, nm = c * p.nu_minus, mp = c * p.mu_plus;
    ck.nbar += Kerneld(np + nm);
    ck.mbar += Kerneld(mp);
    record(ck.contributions, "nbar", k, k, '+', np);
    record(ck.contributions, "nbar", k, k, '-', nm);
    record(ck.contributions, "mbar", k, k, '+', mp);
  }

  for (int k = 1; k <= cfg.k_max; ++k) {
    for (int j = 1; j <= cfg.k_max; ++j) {
      const bool even = (k + j) % 2 == 0;
      const char* nname = even ? "ndelta" : "nsigma";
      const char* mname = even ? "mdelta" : "msigma";
      Kerneld& N = even ? ck.ndelta : ck.nsigma;
      Kerneld& M = even ? ck.mdelta : ck.msigma;

      const double wk = cfg.mode_frequency(k), wj = cfg.mode_frequency(j);
      const double pref = wk * wj / (4.0 * L2);
      const auto p = pair_kernels(k, j, cfg);

      double w_plus = 0.0, w_minus = 0.0;
      bool include_minus = true;
      if (main_text) {
        w_plus = 1.0 / ((wk + wj) * (wk + wj));
        if (k == j) {
          include_minus = false;
          std::ostringstream os;
          os << "main_text convention: diagonal (-) channel term (" << k << "," << k
             << ") skipped in " << nname << "/" << mname << ", weight 1/(w_k - w_j)^2 is singular";
          ck.warnings.push_back(os.str());
        } else {
          w_minus = 1.0 / ((wk - wj) * (wk - wj));
        }
      } else {
        w_plus = (wk - wj) * (wk - wj) / (16.0 * wk * wj);
        w_minus = (wk + wj) * (wk + wj) / (16.0 * wk * wj);
      }

      const TrigSumd np = (pref * w_plus) * p.nu_plus;
      const TrigSumd mp = (pref * w_plus) * p.mu_plus;
      N += Kerneld(np);
      M += Kerneld(mp);
      record(ck.contributions, nname, k, j, '+', np);
      record(ck.contributions, mname, k, j, '+', mp);
      if (include_minus) {
        const TrigSumd nm = (pref * w_minus) * p.nu_minus;
        const TrigSumd mm = (pref * w_minus) * p.mu_minus;
        N += Kerneld(nm);
        M += Kerneld(mm);
        record(ck.contributions, nname, k, j, '-', nm);
        record(ck.contributions, mname, k, j, '-', mm);
      }
    }
  }
  return ck;
}

AppendixComposites appendix_composites(int k, int j, const PhysicalConfig& cfg) {
  const auto p = pair_kernels(k, j, cfg);
  const double ratio = cfg.mode_frequency(k) / cfg.mode_frequency(j);
  return {-p.nu_plus + p.nu_minus, p.mu_plus + p.mu_minus, ratio * (-p.nu_plus - p.nu_minus),
          ratio * (p.mu_plus - p.mu_minus)};
}

std::string to_string(Regime r) { return r == Regime::LowT ? "low_t" : "high_t"; }

Regime parse_regime(std::string_view s) {
  if (s == "low_t") return Regime::LowT;
  if (s == "high_t") return Regime::HighT;
  throw std::invalid_argument("unknown regime '" + std::string(s) + "'");
}

FirstOrderCoefficients first_order_coeffs(const PhysicalConfig& cfg, Regime regime) {
  cfg.validate();
  const double L0 = cfg.cavity_length;
  const double T = cfg.temperature;
  const auto f = f_expansion(L0, 2);
  FirstOrderCoefficients out{regime, 0.0, 0.0, std::nullopt, {}};
  if (regime == Regime::LowT) {
    // Thermal occupation of the lowest mode must be negligible.
    if (thermal_excess(cfg.mode_frequency(1), T) > 1e-6)
      throw std::invalid_argument("low_t regime requested at a temperature that populates mode 1");
    // Action prefactor -(1/2) eps_ren with eps_ren = -pi hbar / 24 L0.
    const double prefactor = kHbar * std::numbers::pi / (48.0 * L0);
    out.force = prefactor * f[1];
    out.trap_correction = prefactor * f[2];
    out.main_text_trap_correction = 3.0 * kHbar * std::numbers::pi / (16.0 * L0 * L0 * L0);
    std::ostringstream os;
    os.precision(17);
    os << "low_t quadratic coefficient from the f-expansion is " << out.trap_correction
       << " (pi/16 L0^3); the main-text value 3 pi/16 L0^3 = " << *out.main_text_trap_correction
       << " differs by a factor 3";
    out.notes.push_back(os.str());
  } else {
    if (!(T >= 10.0 * cfg.mode_frequency(cfg.k_max)))
      throw std::invalid_argument("high_t regime requires T >= 10 omega_kmax");
    const double prefactor = -0.5 * (T / 2.0);
    out.force = prefactor * f[1];
    out.trap_correction = prefactor * f[2];
  }
  return out;
}

double relative_amplitude_residual(const TrigSumd& a, const TrigSumd& b) {
  const double scale = a.max_abs_amplitude();
  const double diff = (a - b).max_abs_amplitude();
  return scale > 0.0 ? diff / scale : diff;
}

FdrReport fdr_check(int k, int j, const PhysicalConfig& cfg) {
  if (k == j)
    throw std::invalid_argument("the difference-channel relation has no fluctuation-dissipation form for k = j");
  const auto p = pair_kernels(k, j, cfg);
  const double wk = cfg.mode_frequency(k), wj = cfg.mode_frequency(j);
  const double T = cfg.temperature;
  const auto [zk, ek] = thermal(k, cfg);
  const auto [zj, ej] = thermal(j, cfg);
  const double zz_minus = ek + ej + ek * ej;

  FdrReport r{};
  r.k = k;
  r.j = j;
  r.temperature = T;
  r.plus_residual =
      relative_amplitude_residual(p.nu_plus, ((wk + wj) * (zz_minus + 2.0) / (zk + zj)) * p.gamma_plus);
  if (T > 0.0) {
    r.minus_printed_residual =
        relative_amplitude_residual(p.nu_minus, ((wk - wj) * zz_minus / (ej - ek)) * p.gamma_minus);
    r.minus_consistent_residual =
        relative_amplitude_residual(p.nu_minus, ((wk - wj) * zz_minus / (ek - ej)) * p.gamma_minus);
    r.kubo_plus_relative = relative_amplitude_residual(p.nu_plus, (2.0 * T) * p.gamma_plus);
    r.kubo_minus_printed_relative = relative_amplitude_residual(p.nu_minus, (2.0 * T) * p.gamma_minus);
    r.kubo_minus_consistent_relative =
        relative_amplitude_residual(p.nu_minus, (-2.0 * T) * p.gamma_minus);
    const double x = (wk + wj) / (2.0 * T);
    r.kubo_bound = 0.5 * x * x;
  } else {
    r.zero_t_plus_residual = relative_amplitude_residual(p.nu_plus, (wk + wj) * p.gamma_plus);
    r.zero_t_minus_residual = relative_amplitude_residual(p.nu_minus, std::abs(wk - wj) * p.gamma_minus);
  }
  return r;
}

}  // namespace cavif
