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

#include "cavif/casimir.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "cavif/errors.hpp"
#include "cavif/field_kernels.hpp"

namespace cavif {

namespace {

// Neumaier compensated summation.
struct CompensatedSum {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      c += (sum - t) + x;
    else
      c += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + c; }
};

constexpr int kLadderRungs = 8;
constexpr long kMaxTerms = 100000000;

}  // namespace

double regularized_energy_density(double sigma, const PhysicalConfig& cfg) {
  if (!(sigma > 0.0)) throw DomainError("regularized energy density requires sigma > 0");
  const double L0 = cfg.cavity_length;
  const double a = sigma * std::numbers::pi / L0;
  CompensatedSum acc;
  for (long k = 1; k <= kMaxTerms; ++k) {
    const double w = k * std::numbers::pi / L0;
    const double z = 1.0 + thermal_excess(w, cfg.temperature);
    const double term = z * w / (2.0 * L0) * std::exp(-sigma * w);
    acc.add(term);
    if (k * a > 1.0 && term < 1e-18 * acc.value()) return kHbar * acc.value();
  }
  throw ConvergenceError("mode sum did not reach its truncation threshold");
}

double regularized_energy_density_t0(double sigma, double cavity_length) {
  if (!(sigma > 0.0)) throw DomainError("regularized energy density requires sigma > 0");
  const double x = std::exp(-sigma * std::numbers::pi / cavity_length);
  const double one_minus_x = -std::expm1(-sigma * std::numbers::pi / cavity_length);
  return kHbar * std::numbers::pi / (2.0 * cavity_length * cavity_length) * x /
         (one_minus_x * one_minus_x);
}

double continuum_energy_density(double sigma, double temperature) {
  if (!(sigma > 0.0)) throw DomainError("continuum energy density requires sigma > 0");
  double value = 1.0 / (2.0 * std::numbers::pi * sigma * sigma);
  if (temperature > 0.0) {
    boost::math::quadrature::exp_sinh<double> integrator;
    auto f = [&](double w) {
      if (w <= 0.0) return temperature;
      const double d = std::expm1(w / temperature);
      return std::isfinite(d) ? w * std::exp(-sigma * w) / d : 0.0;
    };
    double err = 0.0;
    const double thermal = integrator.integrate(f, 1e-14, &err);
    value += thermal / std::numbers::pi;
  }
  return kHbar * value;
}

RenormalizedDensity renormalized_energy_density(const PhysicalConfig& cfg) {
  cfg.validate();
  RegularizationReport rep;
  rep.cavity_length = cfg.cavity_length;
  rep.temperature = cfg.temperature;
  rep.exponents = cfg.temperature == 0.0 ? std::vector<int>{2, 4} : std::vector<int>{1, 2};
  rep.order = static_cast<int>(rep.exponents.size());

  const double sigma0 = 0.1 * cfg.cavity_length / std::numbers::pi;
  for (int m = 0; m < kLadderRungs; ++m) {
    const double s = sigma0 * std::ldexp(1.0, -m);
    const double reg = regularized_energy_density(s, cfg);
    const double div = continuum_energy_density(s, cfg.temperature);
    rep.sigmas.push_back(s);
    rep.regularized.push_back(reg);
    rep.divergent.push_back(div);
    rep.differences.push_back(reg - div);
  }

  // Richardson tableau over the halving ladder.
  rep.tableau.push_back(rep.differences);
  for (int p : rep.exponents) {
    const auto& prev = rep.tableau.back();
    const double f = std::ldexp(1.0, p);
    std::vector<double> next;
    for (std::size_t i = 1; i < prev.size(); ++i) next.push_back((f * prev[i] - prev[i - 1]) / (f - 1.0));
    rep.tableau.push_back(std::move(next));
  }
  const auto& last = rep.tableau.back();
  rep.renormalized = last.back();
  rep.error_estimate = std::abs(last.back() - last[last.size() - 2]);

  const double scale = 1.0 / (cfg.cavity_length * cfg.cavity_length);
  if (!std::isfinite(rep.renormalized) || rep.error_estimate > 1e-6 * scale) {
    std::ostringstream os;
    os.precision(17);
    os << "sigma extrapolation did not converge (estimate " << rep.renormalized << ", spread "
       << rep.error_estimate << "); ladder:";
    for (std::size_t i = 0; i < rep.sigmas.size(); ++i)
      os << " (" << rep.sigmas[i] << ", " << rep.differences[i] << ")";
    throw ConvergenceError(os.str());
  }
  return {rep.renormalized, std::move(rep)};
}

std::vector<double> f_expansion(double cavity_length, int order) {
  if (order < 0) throw std::invalid_argument("negative expansion order");
  std::vector<double> c;
  for (int n = 0; n <= order; ++n) c.push_back((n % 2 ? -1.0 : 1.0) * (n + 1) / std::pow(cavity_length, n));
  return c;
}

double f_exact(double delta, double cavity_length) {
  const double u = 1.0 + delta / cavity_length;
  return 1.0 / (u * u);
}

double f_series(double delta, double cavity_length, int order) {
  const auto c = f_expansion(cavity_length, order);
  double v = 0.0;
  for (int n = order; n >= 0; --n) v = v * delta + c[n];
  return v;
}

}  // namespace cavif
