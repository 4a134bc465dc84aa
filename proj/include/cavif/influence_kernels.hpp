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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cavif/config.hpp"
#include "cavif/trig_sum.hpp"

namespace cavif {

// Two-mode noise and dissipation kernels of a pair (k, j).
struct PairKernelSet {
  int k;
  int j;
  TrigSumd nu_plus;
  TrigSumd nu_minus;
  TrigSumd mu_plus;
  TrigSumd mu_minus;
  TrigSumd gamma_plus;
  TrigSumd gamma_minus;
};

PairKernelSet pair_kernels(int k, int j, const PhysicalConfig& cfg);

// Origin of one line of a composite kernel, kept for diagnostics.
struct PairContribution {
  std::string kernel;
  int k;
  int j;
  char channel;  // '+' or '-'
  double frequency;
  double cos_amplitude;
  double sin_amplitude;
};

struct CompositeKernels {
  KernelConvention convention = KernelConvention::Appendix;
  Kerneld nbar;
  Kerneld mbar;
  Kerneld ndelta;
  Kerneld mdelta;
  Kerneld nsigma;
  Kerneld msigma;
  std::vector<std::string> warnings;
  std::vector<PairContribution> contributions;

  static constexpr std::string_view kNames[6] = {"nbar",   "mbar",   "ndelta",
                                                 "mdelta", "nsigma", "msigma"};
  const Kerneld& get(std::string_view name) const;
  std::vector<PairContribution> contributions_of(std::string_view name) const;
};

CompositeKernels composite_kernels(const PhysicalConfig& cfg);

struct AppendixComposites {
  TrigSumd nu11;
  TrigSumd mu11;
  TrigSumd nu20;
  TrigSumd mu20;
};

AppendixComposites appendix_composites(int k, int j, const PhysicalConfig& cfg);

enum class Regime { LowT, HighT };

std::string to_string(Regime r);
Regime parse_regime(std::string_view s);

struct FirstOrderCoefficients {
  Regime regime;
  // Coefficient of (dq - dq') in the first-order action.
  double force;
  // Coefficient of (dq^2 - dq'^2).
  double trap_correction;
  // Value printed alongside the low-temperature force; differs by a factor 3.
  std::optional<double> main_text_trap_correction;
  std::vector<std::string> notes;
};

FirstOrderCoefficients first_order_coeffs(const PhysicalConfig& cfg, Regime regime);

// Residuals of the fluctuation-dissipation relations of one pair.
//
// Residuals are max |amplitude| of nu - c gamma relative to max |amplitude|
// of nu, and absolute when nu vanishes.
struct FdrReport {
  int k;
  int j;
  double temperature;
  double plus_residual;
  // Printed and sign-consistent forms of the difference relation (T > 0).
  std::optional<double> minus_printed_residual;
  std::optional<double> minus_consistent_residual;
  // Zero-temperature forms (T = 0).
  std::optional<double> zero_t_plus_residual;
  std::optional<double> zero_t_minus_residual;
  // Classical limit nu = +-2T gamma (T > 0).
  std::optional<double> kubo_plus_relative;
  std::optional<double> kubo_minus_printed_relative;
  std::optional<double> kubo_minus_consistent_relative;
  // ((omega_k + omega_j) / 2T)^2 / 2
  std::optional<double> kubo_bound;
};

FdrReport fdr_check(int k, int j, const PhysicalConfig& cfg);

// max |a_i| of (a - b) over max |a_i|, absolute when a vanishes.
double relative_amplitude_residual(const TrigSumd& a, const TrigSumd& b);

}  // namespace cavif
