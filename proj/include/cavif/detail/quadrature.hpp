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

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cavif/errors.hpp"

namespace cavif {

// Absolute tolerance, relaxed to relative for integrands of large L1 norm.
template <class F>
QuadratureResult integrate_interval(F&& f, double a, double b, double tol) {
  double err = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, a, b, 25, tol, &err, &l1);
  if (!std::isfinite(value) || err > tol * std::max(1.0, l1)) {
    std::ostringstream os;
    os << "quadrature on [" << a << ", " << b << "] did not converge: estimate " << value
       << ", error " << err << " > " << tol;
    throw ConvergenceError(os.str());
  }
  return {value, err};
}

}  // namespace cavif
