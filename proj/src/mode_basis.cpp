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

#include "cavif/mode_basis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cavif/errors.hpp"

namespace cavif {

namespace {

void check_index(int k) {
  if (k < 1) throw std::out_of_range("mode index must be positive");
}

double parity(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

void check_domain(double x, double q_left, double q_right) {
  if (!(q_right > q_left)) throw DomainError("mirror positions must satisfy q_L < q_R");
  if (x < q_left || x > q_right) throw DomainError("position outside the cavity");
}

}  // namespace

double g_coeff(int k, int j) {
  check_index(k);
  check_index(j);
  if (k == j) return 0.0;
  const double kk = k, jj = j;
  return 2.0 * jj * kk / (jj * jj - kk * kk);
}

double r_coeff(int k, int j) { return -parity(k + j) * g_coeff(k, j); }

double l_coeff(int k, int j) { return g_coeff(k, j); }

double mode_fn(int k, double x, double q_left, double q_right) {
  check_index(k);
  check_domain(x, q_left, q_right);
  const double L = q_right - q_left;
  return std::sqrt(2.0 / L) * std::sin(k * std::numbers::pi * (x - q_left) / L);
}

double mode_fn_dqr(int k, double x, double q_left, double q_right) {
  const double phi = mode_fn(k, x, q_left, q_right);
  const double L = q_right - q_left;
  const double theta = k * std::numbers::pi * (x - q_left) / L;
  return -phi / (2.0 * L) +
         std::sqrt(2.0 / L) * std::cos(theta) * (-k * std::numbers::pi * (x - q_left) / (L * L));
}

double mode_fn_dql(int k, double x, double q_left, double q_right) {
  const double phi = mode_fn(k, x, q_left, q_right);
  const double L = q_right - q_left;
  const double theta = k * std::numbers::pi * (x - q_left) / L;
  return phi / (2.0 * L) +
         std::sqrt(2.0 / L) * std::cos(theta) * (-k * std::numbers::pi * (q_right - x) / (L * L));
}

ParityChannel parity_decompose(int k, int j) {
  const double g = g_coeff(j, k);
  if ((k + j) % 2 == 0) return {Channel::Delta, g == 0.0 ? 0.0 : -g};
  return {Channel::Sigma, g};
}

QuadratureResult mode_overlap(int k, int j, double q_left, double q_right, double tol) {
  return integrate_interval(
      [&](double x) { return mode_fn(k, x, q_left, q_right) * mode_fn(j, x, q_left, q_right); },
      q_left, q_right, tol);
}

DerivativeIntegralReport verify_derivative_integrals(int k, int j, double tol,
                                                     std::span<const int> truncations,
                                                     double q_left, double q_right) {
  check_index(k);
  check_index(j);
  const double L = q_right - q_left;
  auto integral = [&](auto f) { return integrate_interval(f, q_left, q_right, tol).value; };
  auto dr = [&](int n, double x) { return mode_fn_dqr(n, x, q_left, q_right); };
  auto dl = [&](int n, double x) { return mode_fn_dql(n, x, q_left, q_right); };
  auto phi = [&](int n, double x) { return mode_fn(n, x, q_left, q_right); };

  DerivativeIntegralReport rep{};
  rep.k = k;
  rep.j = j;
  rep.r_closed = r_coeff(k, j);
  rep.l_closed = l_coeff(k, j);
  rep.r_quadrature = L * integral([&](double x) { return dr(k, x) * phi(j, x); });
  rep.l_quadrature = L * integral([&](double x) { return dl(k, x) * phi(j, x); });
  rep.r_residual = std::abs(rep.r_quadrature - rep.r_closed);
  rep.l_residual = std::abs(rep.l_quadrature - rep.l_closed);
  rep.r_transposed_quadrature = L * integral([&](double x) { return phi(k, x) * dr(j, x); });
  rep.l_transposed_quadrature = L * integral([&](double x) { return phi(k, x) * dl(j, x); });
  rep.r_transposed_residual = std::abs(rep.r_transposed_quadrature - rep.r_closed);
  rep.l_transposed_residual = std::abs(rep.l_transposed_quadrature - rep.l_closed);

  const double L2 = L * L;
  rep.rr_target = L2 * integral([&](double x) { return dr(k, x) * dr(j, x); });
  rep.ll_target = L2 * integral([&](double x) { return dl(k, x) * dl(j, x); });
  rep.lr_target = L2 * integral([&](double x) { return dl(j, x) * dr(k, x); });
  rep.lr_transposed_target = L2 * integral([&](double x) { return dl(k, x) * dr(j, x); });

  // Partial sums accumulated once up to the largest truncation.
  int n_max = 0;
  for (int n : truncations) {
    if (n < 1) throw std::invalid_argument("truncation order must be positive");
    n_max = std::max(n_max, n);
  }
  std::vector<double> rr(n_max + 1, 0.0), ll(n_max + 1, 0.0), lr(n_max + 1, 0.0);
  for (int m = 1; m <= n_max; ++m) {
    rr[m] = rr[m - 1] + r_coeff(k, m) * r_coeff(j, m);
    ll[m] = ll[m - 1] + l_coeff(k, m) * l_coeff(j, m);
    lr[m] = lr[m - 1] + l_coeff(k, m) * r_coeff(j, m);
  }
  rep.ladder_monotone = true;
  for (int n : truncations) {
    CompletenessRow row{n,
                        rr[n],
                        ll[n],
                        lr[n],
                        std::abs(rep.rr_target - rr[n]),
                        std::abs(rep.ll_target - ll[n]),
                        std::abs(rep.lr_target - lr[n]),
                        std::abs(rep.lr_transposed_target - lr[n])};
    if (!rep.ladder.empty()) {
      const auto& prev = rep.ladder.back();
      if (!(row.truncation > prev.truncation && row.rr_residual < prev.rr_residual &&
            row.ll_residual < prev.ll_residual && row.lr_residual < prev.lr_residual))
        rep.ladder_monotone = false;
    }
    rep.ladder.push_back(row);
  }
  return rep;
}

}  // namespace cavif
