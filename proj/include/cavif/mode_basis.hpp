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

#include <span>
#include <vector>

namespace cavif {

// Mode coupling coefficients of the instantaneous Dirichlet basis.
double g_coeff(int k, int j);
double r_coeff(int k, int j);
double l_coeff(int k, int j);

// phi_k(x) on (q_L, q_R).
double mode_fn(int k, double x, double q_left, double q_right);
// Partial derivatives of phi_k with respect to the mirror positions.
double mode_fn_dqr(int k, double x, double q_left, double q_right);
double mode_fn_dql(int k, double x, double q_left, double q_right);

enum class Channel { Delta, Sigma };

struct ParityChannel {
  Channel channel;
  double sign_coefficient;
};

ParityChannel parity_decompose(int k, int j);

struct QuadratureResult {
  double value;
  double error_estimate;
};

// Adaptive Gauss-Kronrod integration; throws ConvergenceError when the
// error estimate stays above tol.
template <class F>
QuadratureResult integrate_interval(F&& f, double a, double b, double tol);

QuadratureResult mode_overlap(int k, int j, double q_left, double q_right, double tol = 1e-12);

struct CompletenessRow {
  int truncation;
  double rr_sum;
  double ll_sum;
  double lr_sum;
  double rr_residual;
  double ll_residual;
  double lr_residual;
  double lr_transposed_residual;
};

struct DerivativeIntegralReport {
  int k;
  int j;
  // Closed forms.
  double r_closed;
  double l_closed;
  // L * int (d phi_k / d q) phi_j dx.
  double r_quadrature;
  double l_quadrature;
  double r_residual;
  double l_residual;
  // Same integrals with the derivative on phi_j.
  double r_transposed_quadrature;
  double l_transposed_quadrature;
  double r_transposed_residual;
  double l_transposed_residual;
  // L^2 int (d phi / d q)(d phi / d q) dx targets of the completeness sums.
  double rr_target;
  double ll_target;
  double lr_target;             // L^2 int d_L phi_j d_R phi_k dx
  double lr_transposed_target;  // L^2 int d_L phi_k d_R phi_j dx
  std::vector<CompletenessRow> ladder;
  bool ladder_monotone;
};

DerivativeIntegralReport verify_derivative_integrals(int k, int j, double tol,
                                                     std::span<const int> truncations,
                                                     double q_left = 0.0, double q_right = 1.0);

}  // namespace cavif

#include "cavif/detail/quadrature.hpp"
