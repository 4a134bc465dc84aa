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

#include "cavif/config.hpp"
#include "cavif/trig_sum.hpp"

namespace cavif {

// z = coth(omega / 2T), exactly 1 at T = 0.
double thermal_factor(double omega, double temperature);

// z - 1 = 2 / expm1(omega / T), accurate when z is close to 1.
double thermal_excess(double omega, double temperature);

struct FieldKernels {
  TrigSumd noise;        // nu_k
  TrigSumd dissipation;  // mu_k
  TrigSumd gamma;        // gamma_k, antiderivative of mu_k
};

FieldKernels field_kernels(int k, const PhysicalConfig& cfg);

enum class PropagatorKind {
  QQ,
  QpQp,
  QpQ,
  dQ_Q,
  dQ_dQ,
  dQp_Qp,
  dQp_dQp,
  dQp_Q,
  Qp_dQ,
  dQp_dQ,
};

std::string_view to_string(PropagatorKind kind);
PropagatorKind parse_propagator_kind(std::string_view name);

// Feynman propagator of one field mode for a pair of path branches.
//
// The regular part is a function of the time difference. Kinds with a
// second derivative on both legs carry an additional contact term
// contact() * delta(dt), kept out of the regular part.
class Propagator {
 public:
  Propagator(PropagatorKind kind, int k, const PhysicalConfig& cfg);

  PropagatorKind kind() const { return kind_; }
  int mode() const { return mode_; }

  std::complex<double> operator()(double dt) const;

  // Real weight inside the bracket multiplying delta(dt), e.g. -2 mu'(0).
  double contact_weight() const { return contact_weight_; }
  // Full complex coefficient of delta(dt).
  std::complex<double> contact() const;

 private:
  PropagatorKind kind_;
  int mode_;
  FieldKernels kernels_;
  TrigSumd dnu_, ddnu_, dmu_, ddmu_;
  double contact_weight_ = 0.0;
};

std::complex<double> propagator(PropagatorKind kind, int k, double dt, const PhysicalConfig& cfg);

}  // namespace cavif
