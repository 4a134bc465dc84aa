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

#include <vector>

#include "cavif/config.hpp"

namespace cavif {

// sum_k z_k (omega_k / 2 L0) exp(-sigma omega_k)
double regularized_energy_density(double sigma, const PhysicalConfig& cfg);

// Infinite-separation limit of the regularized density at the same sigma.
double continuum_energy_density(double sigma, double temperature);

// Closed form at T = 0: (pi / 2 L0^2) x / (1 - x)^2 with x = exp(-sigma pi / L0).
double regularized_energy_density_t0(double sigma, double cavity_length);

struct RegularizationReport {
  double cavity_length = 0.0;
  double temperature = 0.0;
  std::vector<double> sigmas;       // strictly decreasing
  std::vector<double> regularized;  // eps_reg(sigma_m)
  std::vector<double> divergent;    // continuum part removed at sigma_m
  std::vector<double> differences;  // regularized - divergent
  std::vector<int> exponents;       // sigma powers eliminated by extrapolation
  std::vector<std::vector<double>> tableau;
  double renormalized = 0.0;
  double error_estimate = 0.0;
  int order = 0;
};

struct RenormalizedDensity {
  double value;
  RegularizationReport report;
};

RenormalizedDensity renormalized_energy_density(const PhysicalConfig& cfg);

// Taylor coefficients of f(d) = 1 / (1 + d / L0)^2 in powers of d.
std::vector<double> f_expansion(double cavity_length, int order);
double f_exact(double delta, double cavity_length);
double f_series(double delta, double cavity_length, int order);

}  // namespace cavif
