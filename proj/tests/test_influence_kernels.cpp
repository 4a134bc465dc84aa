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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "cavif/influence_kernels.hpp"

using namespace cavif;

namespace {

constexpr double kPi = std::numbers::pi;

double z_of(double w, double T) {
  if (T == 0.0) return 1.0;
  const double e = std::exp(w / T);
  return (e + 1.0) / (e - 1.0);
}

PhysicalConfig cfg_at(double T, int kmax, KernelConvention conv = KernelConvention::Appendix) {
  PhysicalConfig c;
  c.temperature = T;
  c.k_max = kmax;
  c.convention = conv;
  return c;
}

// Direct double-sum evaluation of the appendix-convention N_Delta / N_Sigma.
double brute_channel_noise(const PhysicalConfig& c, bool even, double t) {
  double s = 0.0;
  for (int k = 1; k <= c.k_max; ++k)
    for (int j = 1; j <= c.k_max; ++j) {
      if (((k + j) % 2 == 0) != even) continue;
      const double wk = k * kPi / c.cavity_length, wj = j * kPi / c.cavity_length;
      const double zk = z_of(wk, c.temperature), zj = z_of(wj, c.temperature);
      const double pref = wk * wj / (4.0 * c.cavity_length * c.cavity_length) / (16.0 * wk * wj);
      s += pref * (wk - wj) * (wk - wj) * -(zk * zj + 1.0) * std::cos((wk + wj) * t);
      s += pref * (wk + wj) * (wk + wj) * -(zk * zj - 1.0) * std::cos((wk - wj) * t);
    }
  return s;
}

std::set<long> support_keys(const Kerneld& k) {
  std::set<long> out;
  for (const auto& l : k.spectrum()) out.insert(std::lround(l.frequency / kPi));
  return out;
}

}  // namespace

TEST(PairKernels, ClosedForms) {
  for (double T : {0.0, 0.3, 2.0}) {
    const auto c = cfg_at(T, 4);
    for (int k = 1; k <= 4; ++k)
      for (int j = 1; j <= 4; ++j) {
        const auto p = pair_kernels(k, j, c);
        const double wk = k * kPi, wj = j * kPi, zk = z_of(wk, T), zj = z_of(wj, T);
        for (double t : {0.0, 0.17, 0.9}) {
          EXPECT_NEAR(p.nu_plus(t), -(zk * zj + 1) * std::cos((wk + wj) * t), 1e-12);
          EXPECT_NEAR(p.nu_minus(t), -(zk * zj - 1) * std::cos((wk - wj) * t), 1e-12);
          EXPECT_NEAR(p.mu_plus(t), (zk + zj) * std::sin((wk + wj) * t), 1e-12);
          EXPECT_NEAR(p.mu_minus(t), (zk - zj) * std::sin((wk - wj) * t), 1e-12);
        }
        EXPECT_NEAR(p.nu_plus(0.0), -(zk * zj + 1), 1e-12);
        EXPECT_LT((trig_derivative(p.gamma_plus) - p.mu_plus).max_abs_amplitude(), 1e-13);
      }
  }
}

TEST(PairKernels, DiagonalMinusChannel) {
  auto c = cfg_at(0.0, 3);
  for (int k = 1; k <= 3; ++k) {
    const auto p = pair_kernels(k, k, c);
    EXPECT_TRUE(p.mu_minus.empty());
    EXPECT_LT(p.nu_minus.max_abs_amplitude(), 1e-300);
  }
  c.temperature = 5.0;
  EXPECT_TRUE(pair_kernels(2, 2, c).mu_minus.empty());
  EXPECT_GT(pair_kernels(2, 2, c).nu_minus.max_abs_amplitude(), 0.0);
}

TEST(PairKernels, ThermalExcessAvoidsCancellation) {
  // z_k z_j - 1 at very low T is tiny but positive.
  const auto c = cfg_at(0.05, 2);
  const auto p = pair_kernels(1, 1, c);
  const double e = 2.0 * std::exp(-kPi / 0.05);
  EXPECT_NEAR(-p.nu_minus(0.0) / (2 * e), 1.0, 1e-10);
}

TEST(Composite, NbarMatchesDiagonalSum) {
  const auto c = cfg_at(0.8, 3);
  const auto ck = composite_kernels(c);
  for (double t : {0.0, 0.23, 1.4}) {
    double n = 0.0, m = 0.0;
    for (int k = 1; k <= 3; ++k) {
      const double w = k * kPi, z = z_of(w, 0.8);
      n += w * w / 4.0 * (-(z * z + 1) * std::cos(2 * w * t) - (z * z - 1));
      m += w * w / 4.0 * 2 * z * std::sin(2 * w * t);
    }
    EXPECT_NEAR(ck.nbar(t), n, 1e-10);
    EXPECT_NEAR(ck.mbar(t), m, 1e-10);
  }
}

TEST(Composite, ChannelKernelsMatchBruteForce) {
  const auto c = cfg_at(1.0, 5);
  const auto ck = composite_kernels(c);
  for (double t : {0.0, 0.31, 0.77}) {
    EXPECT_NEAR(ck.ndelta(t), brute_channel_noise(c, true, t), 1e-9);
    EXPECT_NEAR(ck.nsigma(t), brute_channel_noise(c, false, t), 1e-9);
  }
}

TEST(Composite, SpectraForKmaxTwo) {
  const auto ck = composite_kernels(cfg_at(1.0, 2));
  EXPECT_EQ(support_keys(ck.nsigma), (std::set<long>{1, 3}));
  EXPECT_EQ(support_keys(ck.nbar), (std::set<long>{0, 2, 4}));
  for (const auto& l : ck.mbar.spectrum()) {
    const long key = std::lround(l.frequency / kPi);
    EXPECT_TRUE(key == 2 || key == 4);
  }
}

TEST(Composite, MbarAmplitudeAtZeroTemperature) {
  const auto ck = composite_kernels(cfg_at(0.0, 3));
  for (const auto& l : ck.mbar.spectrum()) {
    const double w = l.frequency / 2.0;
    EXPECT_NEAR(l.sin_amplitude, w * w / 4.0 * 2.0, 1e-12);
  }
  EXPECT_EQ(ck.nbar.constant, 0.0);
}

TEST(Composite, ParityDisjointAndConventionsShareSupport) {
  for (double T : {0.0, 1.0}) {
    const auto a = composite_kernels(cfg_at(T, 6));
    const auto m = composite_kernels(cfg_at(T, 6, KernelConvention::MainText));
    const auto d = support_keys(a.ndelta), s = support_keys(a.nsigma);
    for (long x : d) EXPECT_EQ(s.count(x), 0u);
    for (long x : d) EXPECT_EQ(x % 2, 0);
    for (long x : s) EXPECT_EQ(x % 2, 1);
    auto dm = support_keys(m.ndelta);
    // Main-text skips the diagonal (-) terms, which only feed the constant.
    auto da = d;
    da.erase(0);
    dm.erase(0);
    EXPECT_EQ(da, dm);
    EXPECT_EQ(s, support_keys(m.nsigma));
  }
}

TEST(Composite, MainTextWarnsOnDiagonal) {
  const auto ck = composite_kernels(cfg_at(0.0, 3, KernelConvention::MainText));
  EXPECT_EQ(ck.warnings.size(), 3u);
  EXPECT_TRUE(composite_kernels(cfg_at(0.0, 3)).warnings.empty());
}

TEST(Composite, ContributionsReassembleKernel) {
  const auto ck = composite_kernels(cfg_at(0.5, 4));
  for (auto name : CompositeKernels::kNames) {
    std::vector<TrigTerm<double>> terms;
    for (const auto& c : ck.contributions_of(name)) {
      terms.push_back({c.cos_amplitude, c.frequency, Phase::Cos});
      terms.push_back({c.sin_amplitude, c.frequency, Phase::Sin});
    }
    const Kerneld rebuilt{TrigSumd(terms)};
    for (double t : {0.0, 0.4}) EXPECT_NEAR(rebuilt(t), ck.get(name)(t), 1e-9) << name;
  }
  EXPECT_THROW(ck.get("nothing"), std::invalid_argument);
}

TEST(AppendixComposites, DiagonalLimits) {
  const auto c = cfg_at(0.0, 3);
  for (int k = 1; k <= 3; ++k) {
    const auto a = appendix_composites(k, k, c);
    const auto p = pair_kernels(k, k, c);
    EXPECT_NEAR(a.nu11(0.0), 2.0, 1e-14);
    EXPECT_NEAR(a.nu11(0.3), 2.0 * std::cos(2 * k * kPi * 0.3), 1e-13);
    EXPECT_LT((a.mu11 - p.mu_plus).max_abs_amplitude(), 1e-15);
    EXPECT_LT((a.nu20 - (-p.nu_plus - p.nu_minus)).max_abs_amplitude(), 1e-15);
  }
  const auto a = appendix_composites(1, 3, cfg_at(0.0, 3));
  const auto p = pair_kernels(1, 3, cfg_at(0.0, 3));
  EXPECT_LT((a.mu20 - (1.0 / 3.0) * (p.mu_plus - p.mu_minus)).max_abs_amplitude(), 1e-15);
}

TEST(FirstOrder, LowTemperature) {
  for (double L0 : {0.5, 1.0, 2.0}) {
    auto c = cfg_at(0.0, 4);
    c.cavity_length = L0;
    const auto f = first_order_coeffs(c, Regime::LowT);
    EXPECT_NEAR(f.force, -kPi / (24 * L0 * L0), 1e-15);
    EXPECT_NEAR(f.trap_correction, 0.5 * (kPi / (24 * L0)) * 3.0 / (L0 * L0), 1e-15);
    EXPECT_NEAR(*f.main_text_trap_correction, 3 * kPi / (16 * L0 * L0 * L0), 1e-15);
    EXPECT_FALSE(f.notes.empty());
  }
}

TEST(FirstOrder, HighTemperature) {
  auto c = cfg_at(500.0, 4);
  const auto f = first_order_coeffs(c, Regime::HighT);
  EXPECT_DOUBLE_EQ(f.force, 250.0);
  EXPECT_DOUBLE_EQ(f.trap_correction, -375.0);
}

TEST(FirstOrder, RegimeMismatch) {
  EXPECT_THROW(first_order_coeffs(cfg_at(1.0, 4), Regime::LowT), std::invalid_argument);
  EXPECT_THROW(first_order_coeffs(cfg_at(1.0, 4), Regime::HighT), std::invalid_argument);
  EXPECT_EQ(parse_regime(to_string(Regime::HighT)), Regime::HighT);
}

TEST(Fdr, ZeroTemperatureForms) {
  const auto c = cfg_at(0.0, 2);
  const auto p = pair_kernels(1, 2, c);
  EXPECT_LT((p.nu_plus - (3 * kPi) * p.gamma_plus).max_abs_amplitude(), 1e-12);
  const auto r = fdr_check(1, 2, c);
  EXPECT_LT(*r.zero_t_plus_residual, 1e-12);
  // gamma_- at T = 0 is zero, and so is nu_-.
  EXPECT_LT(*r.zero_t_minus_residual, 1e-12);
}

TEST(Fdr, PlusChannelHoldsAtAllTemperatures) {
  for (double T : {0.1, 1.0, 10.0}) {
    const auto c = cfg_at(T, 6);
    for (int k = 1; k <= 6; ++k)
      for (int j = 1; j <= 6; ++j) {
        if (k == j) continue;
        const auto p = pair_kernels(k, j, c);
        const double wk = k * kPi, wj = j * kPi, zk = z_of(wk, T), zj = z_of(wj, T);
        const auto rhs = ((wk + wj) * (zk * zj + 1) / (zk + zj)) * p.gamma_plus;
        EXPECT_LT(relative_amplitude_residual(p.nu_plus, rhs), 1e-12);
        EXPECT_LT(fdr_check(k, j, c).plus_residual, 1e-12);
      }
  }
}

TEST(Fdr, MinusChannelSignConsistentForm) {
  for (double T : {0.1, 1.0, 10.0}) {
    const auto c = cfg_at(T, 4);
    for (int k = 1; k <= 4; ++k)
      for (int j = 1; j <= 4; ++j) {
        if (k == j) continue;
        const auto p = pair_kernels(k, j, c);
        const double wk = k * kPi, wj = j * kPi;
        const double ek = 2 / std::expm1(wk / T), ej = 2 / std::expm1(wj / T);
        const auto rhs = ((wk - wj) * (ek + ej + ek * ej) / (ek - ej)) * p.gamma_minus;
        EXPECT_LT(relative_amplitude_residual(p.nu_minus, rhs), 1e-9);
        const auto r = fdr_check(k, j, c);
        EXPECT_LT(*r.minus_consistent_residual, 1e-12);
        // The printed denominator z_j - z_k flips the sign.
        EXPECT_NEAR(*r.minus_printed_residual, 2.0, 1e-12);
      }
  }
}

TEST(Fdr, KuboLimit) {
  const auto c = cfg_at(100.0, 2);
  const auto r = fdr_check(1, 2, c);
  EXPECT_LT(*r.kubo_plus_relative, 1e-3);
  EXPECT_LT(*r.kubo_plus_relative, *r.kubo_bound);
  const double x = 3 * kPi / 200.0;
  EXPECT_NEAR(*r.kubo_plus_relative, x * x / 3.0, 0.05 * x * x);
  EXPECT_LT(*r.kubo_minus_consistent_relative, 1e-3);
}

TEST(Fdr, DiagonalRejected) { EXPECT_THROW(fdr_check(2, 2, cfg_at(1.0, 3)), std::invalid_argument); }
