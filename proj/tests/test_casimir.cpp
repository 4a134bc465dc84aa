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

#include <chrono>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "cavif/casimir.hpp"
#include "cavif/errors.hpp"

using namespace cavif;

namespace {

constexpr double kPi = std::numbers::pi;

PhysicalConfig cfg_at(double T, double L0) {
  PhysicalConfig c;
  c.temperature = T;
  c.cavity_length = L0;
  return c;
}

// Vacuum part plus the finite thermal mode sum minus its continuum integral pi T^2 / 6.
double thermal_oracle(double T, double L0) {
  double s = -kPi / (24 * L0 * L0);
  for (int k = 1; k < 10000; ++k) {
    const double w = k * kPi / L0;
    const double term = (w / L0) / std::expm1(w / T);
    s += term;
    if (term < 1e-30) break;
  }
  return s - kPi * T * T / 6.0;
}

}  // namespace

TEST(Regularized, GeometricSeriesClosedForm) {
  for (double L0 : {0.5, 1.0, 2.0})
    for (double sigma : {0.01, 0.1, 1.0}) {
      const double x = std::exp(-sigma * kPi / L0);
      const double exact = kPi / (2 * L0 * L0) * x / ((1 - x) * (1 - x));
      EXPECT_NEAR(regularized_energy_density(sigma, cfg_at(0, L0)) / exact, 1.0, 1e-13);
      EXPECT_NEAR(regularized_energy_density_t0(sigma, L0) / exact, 1.0, 1e-13);
    }
}

TEST(Regularized, SmallSigmaApproachesCasimir) {
  double prev = 1.0;
  for (double sigma : {0.04, 0.02, 0.01}) {
    const double d = regularized_energy_density(sigma, cfg_at(0, 1)) - 1.0 / (2 * kPi * sigma * sigma);
    const double err = std::abs(d + kPi / 24);
    EXPECT_LT(err, prev);
    prev = err;
  }
  EXPECT_LT(prev, 1e-3);
}

TEST(Regularized, LargeSigmaVanishes) {
  EXPECT_LT(regularized_energy_density(50.0, cfg_at(0, 1)), 1e-60);
  EXPECT_THROW(regularized_energy_density(0.0, cfg_at(0, 1)), DomainError);
}

TEST(Continuum, ThermalIntegral) {
  // sigma -> 0 thermal part tends to pi T^2 / 6.
  const double s = 1e-6, T = 2.0;
  EXPECT_NEAR(continuum_energy_density(s, T) - 1 / (2 * kPi * s * s), kPi * T * T / 6, 1e-4);
  EXPECT_DOUBLE_EQ(continuum_energy_density(0.3, 0.0), 1 / (2 * kPi * 0.09));
}

TEST(Renormalized, ZeroTemperatureCasimir) {
  for (double L0 : {0.5, 1.0, 2.0}) {
    const auto start = std::chrono::steady_clock::now();
    const auto r = renormalized_energy_density(cfg_at(0, L0));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double exact = -kPi / (24 * L0 * L0);
    EXPECT_LT(std::abs(r.value / exact - 1), 1e-3);
    EXPECT_LT(std::abs(r.value / exact - 1), 1e-6);
    EXPECT_LT(secs, 1.0);
    EXPECT_EQ(r.report.sigmas.size(), 8u);
    for (std::size_t i = 1; i < r.report.sigmas.size(); ++i) EXPECT_LT(r.report.sigmas[i], r.report.sigmas[i - 1]);
  }
}

TEST(Renormalized, LengthScaling) {
  const double a = renormalized_energy_density(cfg_at(0, 1)).value;
  const double b = renormalized_energy_density(cfg_at(0, 2)).value;
  EXPECT_NEAR(b * 4, a, 1e-7);
  EXPECT_NEAR(b, -kPi / 96, 1e-7);
}

TEST(Renormalized, LadderDifferencesShrink) {
  const auto r = renormalized_energy_density(cfg_at(0, 1)).report;
  for (std::size_t i = 2; i < r.differences.size(); ++i)
    EXPECT_LT(std::abs(r.differences[i] - r.differences[i - 1]), std::abs(r.differences[i - 1] - r.differences[i - 2]));
}

TEST(Renormalized, FiniteTemperatureMatchesModeSumOracle) {
  for (double T : {0.3, 1.0, 4.0})
    for (double L0 : {1.0, 2.0}) {
      const auto r = renormalized_energy_density(cfg_at(T, L0));
      EXPECT_NEAR(r.value, thermal_oracle(T, L0), 1e-6) << "T=" << T << " L0=" << L0;
    }
}

TEST(Renormalized, HighTemperatureLinearTerm) {
  // Renormalized density at high T approaches -T / 2 L0.
  const double T = 20.0, L0 = 1.0;
  const double v = renormalized_energy_density(cfg_at(T, L0)).value;
  EXPECT_NEAR(v / (-T / (2 * L0)), 1.0, 1e-3);
}

TEST(FExpansion, Coefficients) {
  const auto c = f_expansion(1.0, 2);
  EXPECT_EQ(c, (std::vector<double>{1.0, -2.0, 3.0}));
  const auto c2 = f_expansion(2.0, 2);
  EXPECT_DOUBLE_EQ(c2[1], -1.0);
  EXPECT_DOUBLE_EQ(c2[2], 0.75);
  EXPECT_EQ(f_exact(0.0, 1.0), 1.0);
  EXPECT_LT(std::abs(f_exact(0.1, 1.0) - (1 - 0.2 + 0.03)), 4 * 0.1 * 0.1 * 0.1);
  EXPECT_NEAR(f_exact(0.1, 1.0), 1.0 / 1.21, 1e-15);
  EXPECT_NEAR(f_series(0.1, 1.0, 2), 0.83, 1e-15);
}

TEST(FExpansion, TaylorCoefficientsByFiniteDifference) {
  const double L0 = 1.7, h = 1e-4;
  const auto c = f_expansion(L0, 2);
  EXPECT_NEAR((f_exact(h, L0) - f_exact(-h, L0)) / (2 * h), c[1], 1e-7);
  EXPECT_NEAR((f_exact(h, L0) - 2 * f_exact(0, L0) + f_exact(-h, L0)) / (h * h) / 2, c[2], 1e-5);
}
