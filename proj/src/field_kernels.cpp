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

#include "cavif/field_kernels.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cavif {

double thermal_factor(double omega, double temperature) {
  return 1.0 + thermal_excess(omega, temperature);
}

double thermal_excess(double omega, double temperature) {
  if (!(omega > 0.0)) throw DomainError("thermal factor requires a positive frequency");
  if (temperature < 0.0) throw DomainError("negative temperature");
  if (temperature == 0.0) return 0.0;
  return 2.0 / std::expm1(omega / temperature);
}

FieldKernels field_kernels(int k, const PhysicalConfig& cfg) {
  if (k < 1 || k > cfg.k_max) throw std::out_of_range("mode index out of range");
  const double w = cfg.mode_frequency(k);
  const double z = thermal_factor(w, cfg.temperature);
  return {TrigSumd::cosine(z / (2.0 * w), w), TrigSumd::sine(-1.0 / (2.0 * w), w),
          TrigSumd::cosine(1.0 / (2.0 * w * w), w)};
}

namespace {

constexpr std::array<std::string_view, 10> kKindNames = {
    "QQ", "QpQp", "QpQ", "dQ_Q", "dQ_dQ", "dQp_Qp", "dQp_dQp", "dQp_Q", "Qp_dQ", "dQp_dQ"};

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

std::string_view to_string(PropagatorKind kind) {
  return kKindNames.at(static_cast<std::size_t>(kind));
}

PropagatorKind parse_propagator_kind(std::string_view name) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i)
    if (kKindNames[i] == name) return static_cast<PropagatorKind>(i);
  throw std::invalid_argument("unknown propagator kind '" + std::string(name) + "'");
}

Propagator::Propagator(PropagatorKind kind, int k, const PhysicalConfig& cfg)
    : kind_(kind), mode_(k), kernels_(field_kernels(k, cfg)) {
  if (static_cast<std::size_t>(kind) >= kKindNames.size())
    throw std::invalid_argument("unknown propagator kind");
  dnu_ = trig_derivative(kernels_.noise);
  ddnu_ = trig_derivative(dnu_);
  dmu_ = trig_derivative(kernels_.dissipation);
  ddmu_ = trig_derivative(dmu_);
  if (kind == PropagatorKind::dQ_dQ) contact_weight_ = -2.0 * dmu_(0.0);
  if (kind == PropagatorKind::dQp_dQp) contact_weight_ = 2.0 * dmu_(0.0);
}

std::complex<double> Propagator::contact() const {
  return std::complex<double>(0.0, kHbar) * contact_weight_;
}

std::complex<double> Propagator::operator()(double dt) const {
  using namespace std::complex_literals;
  const double s = sgn(dt);
  const double nu = kernels_.noise(dt);
  const double mu = kernels_.dissipation(dt);
  switch (kind_) {
    case PropagatorKind::QQ:
      return -1i * kHbar * (-mu * s + 1i * nu);
    case PropagatorKind::QpQp:
      return -1i * kHbar * (mu * s + 1i * nu);
    case PropagatorKind::QpQ:
      return -1i * kHbar * (mu - 1i * nu);
    case PropagatorKind::dQ_Q:
      return -1i * kHbar * (-dmu_(dt) * s + 1i * dnu_(dt));
    case PropagatorKind::dQ_dQ:
      return 1i * kHbar * (-ddmu_(dt) * s + 1i * ddnu_(dt));
    case PropagatorKind::dQp_Qp:
      return -1i * kHbar * (dmu_(dt) * s + 1i * dnu_(dt));
    case PropagatorKind::dQp_dQp:
      return 1i * kHbar * (ddmu_(dt) * s + 1i * ddnu_(dt));
    case PropagatorKind::dQp_Q:
      return -1i * kHbar * (dmu_(dt) - 1i * dnu_(dt));
    case PropagatorKind::Qp_dQ:
      return 1i * kHbar * (dmu_(dt) - 1i * dnu_(dt));
    case PropagatorKind::dQp_dQ:
      return 1i * kHbar * (ddmu_(dt) - 1i * ddnu_(dt));
  }
  throw std::invalid_argument("unknown propagator kind");
}

std::complex<double> propagator(PropagatorKind kind, int k, double dt, const PhysicalConfig& cfg) {
  return Propagator(kind, k, cfg)(dt);
}

}  // namespace cavif
