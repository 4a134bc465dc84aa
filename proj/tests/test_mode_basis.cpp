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

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "cavif/errors.hpp"
#include "cavif/mode_basis.hpp"

using namespace cavif;

namespace {

template <class F>
double simpson(F f, double a, double b, int n = 4000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

const std::vector<int> kLadder{25, 50, 100, 200};

}  // namespace

TEST(Coefficients, PrintedValues) {
  EXPECT_DOUBLE_EQ(g_coeff(1, 2), 4.0 / 3.0);
  EXPECT_EQ(g_coeff(3, 3), 0.0);
  EXPECT_DOUBLE_EQ(g_coeff(2, 1), -4.0 / 3.0);
}

TEST(Coefficients, AntisymmetryAndRelations) {
  for (int k = 1; k <= 12; ++k)
    for (int j = 1; j <= 12; ++j) {
      EXPECT_EQ(g_coeff(k, j), -g_coeff(j, k));
      EXPECT_EQ(r_coeff(k, j), -std::pow(-1.0, k + j) * g_coeff(k, j));
      EXPECT_EQ(l_coeff(k, j), g_coeff(k, j));
    }
}

TEST(ModeFunction, BoundaryAndMidpoint) {
  for (int k = 1; k <= 5; ++k) {
    EXPECT_NEAR(mode_fn(k, 0.3, 0.3, 1.7), 0.0, 1e-15);
    EXPECT_NEAR(mode_fn(k, 1.7, 0.3, 1.7), 0.0, 1e-14);
  }
  EXPECT_DOUBLE_EQ(mode_fn(1, 0.5, 0.0, 1.0), std::sqrt(2.0));
  EXPECT_THROW(mode_fn(1, 1.1, 0.0, 1.0), DomainError);
  EXPECT_THROW(mode_fn(1, -0.1, 0.0, 1.0), DomainError);
}

TEST(ModeFunction, AnalyticDerivativesMatchFiniteDifferences) {
  const double qL = 0.2, qR = 1.4, h = 1e-6;
  for (int k = 1; k <= 4; ++k)
    for (double x : {0.35, 0.8, 1.2}) {
      const double fr = (mode_fn(k, x, qL, qR + h) - mode_fn(k, x, qL, qR - h)) / (2 * h);
      const double fl = (mode_fn(k, x, qL + h, qR) - mode_fn(k, x, qL - h, qR)) / (2 * h);
      EXPECT_NEAR(mode_fn_dqr(k, x, qL, qR), fr, 1e-7);
      EXPECT_NEAR(mode_fn_dql(k, x, qL, qR), fl, 1e-7);
    }
}

TEST(ModeFunction, Orthonormality) {
  for (int k = 1; k <= 10; ++k)
    for (int j = 1; j <= 10; ++j) {
      const double v = mode_overlap(k, j, 0.0, 1.0).value;
      EXPECT_LT(std::abs(v - (k == j ? 1.0 : 0.0)), 1e-10) << k << "," << j;
    }
  EXPECT_NEAR(mode_overlap(3, 3, -0.4, 2.1).value, 1.0, 1e-10);
}

TEST(Parity, Channels) {
  EXPECT_EQ(parity_decompose(1, 3).channel, Channel::Delta);
  EXPECT_EQ(parity_decompose(1, 2).channel, Channel::Sigma);
  const auto d = parity_decompose(2, 2);
  EXPECT_EQ(d.channel, Channel::Delta);
  EXPECT_EQ(d.sign_coefficient, 0.0);
  EXPECT_DOUBLE_EQ(parity_decompose(1, 3).sign_coefficient, -g_coeff(3, 1));
  EXPECT_DOUBLE_EQ(parity_decompose(1, 2).sign_coefficient, g_coeff(2, 1));
}

TEST(Parity, PartitionIsExhaustive) {
  int delta = 0, sigma = 0;
  for (int k = 1; k <= 9; ++k)
    for (int j = 1; j <= 9; ++j) {
      const auto c = parity_decompose(k, j).channel;
      (c == Channel::Delta ? delta : sigma)++;
      EXPECT_EQ(c == Channel::Delta, (k + j) % 2 == 0);
    }
  EXPECT_EQ(delta + sigma, 81);
}

TEST(DerivativeIntegrals, QuadratureAgreesWithSimpson) {
  for (int k = 1; k <= 4; ++k)
    for (int j = 1; j <= 4; ++j) {
      const auto rep = verify_derivative_integrals(k, j, 1e-12, kLadder);
      const double r = simpson([&](double x) { return mode_fn_dqr(k, x, 0, 1) * mode_fn(j, x, 0, 1); }, 0, 1);
      const double l = simpson([&](double x) { return mode_fn_dql(k, x, 0, 1) * mode_fn(j, x, 0, 1); }, 0, 1);
      EXPECT_NEAR(rep.r_quadrature, r, 1e-10);
      EXPECT_NEAR(rep.l_quadrature, l, 1e-10);
      EXPECT_DOUBLE_EQ(rep.r_residual, std::abs(rep.r_quadrature - rep.r_closed));
    }
}

TEST(DerivativeIntegrals, DiagonalVanishes) {
  for (int k = 1; k <= 6; ++k) {
    const auto rep = verify_derivative_integrals(k, k, 1e-12, kLadder);
    EXPECT_EQ(rep.r_closed, 0.0);
    EXPECT_LT(rep.r_residual, 1e-8);
    EXPECT_LT(rep.l_residual, 1e-8);
  }
}

TEST(DerivativeIntegrals, TransposedPlacementHolds) {
  for (int k = 1; k <= 6; ++k)
    for (int j = 1; j <= 6; ++j) {
      const auto rep = verify_derivative_integrals(k, j, 1e-12, kLadder);
      EXPECT_LT(rep.r_transposed_residual, 1e-8);
      EXPECT_LT(rep.l_transposed_residual, 1e-8);
    }
  const auto rep = verify_derivative_integrals(1, 2, 1e-12, kLadder);
  EXPECT_NEAR(rep.r_quadrature, -4.0 / 3.0, 1e-10);
}

TEST(DerivativeIntegrals, ShiftedCavityScaleInvariant) {
  const auto a = verify_derivative_integrals(2, 3, 1e-12, kLadder);
  const auto b = verify_derivative_integrals(2, 3, 1e-12, kLadder, -0.5, 1.5);
  EXPECT_NEAR(a.r_quadrature, b.r_quadrature, 1e-10);
  EXPECT_NEAR(a.l_quadrature, b.l_quadrature, 1e-10);
}

TEST(Completeness, DiagonalResidualsDecreaseSlowly) {
  const auto rep = verify_derivative_integrals(1, 1, 1e-12, kLadder);
  ASSERT_EQ(rep.ladder.size(), 4u);
  EXPECT_TRUE(rep.ladder_monotone);
  for (std::size_t i = 1; i < rep.ladder.size(); ++i) {
    EXPECT_LT(rep.ladder[i].rr_residual, rep.ladder[i - 1].rr_residual);
    EXPECT_GT(rep.ladder[i].rr_residual, 0.0);
  }
}

TEST(Completeness, TransposedCrossSumConverges) {
  for (int k = 1; k <= 4; ++k)
    for (int j = 1; j <= 4; ++j) {
      const auto rep = verify_derivative_integrals(k, j, 1e-12, kLadder);
      for (std::size_t i = 1; i < rep.ladder.size(); ++i)
        EXPECT_LT(rep.ladder[i].lr_transposed_residual, rep.ladder[i - 1].lr_transposed_residual);
    }
}

TEST(Completeness, RejectsBadTruncation) {
  const std::vector<int> bad{0};
  EXPECT_THROW(verify_derivative_integrals(1, 1, 1e-12, bad), std::invalid_argument);
}
