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
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "cavif/errors.hpp"

namespace cavif {

enum class Phase { Cos, Sin };

template <class Scalar>
struct TrigTerm {
  Scalar amplitude{0};
  Scalar frequency{0};
  Phase phase{Phase::Cos};
};

// One row of a line spectrum: a frequency with its cosine and sine weights.
template <class Scalar>
struct SpectralLine {
  Scalar frequency{0};
  Scalar cos_amplitude{0};
  Scalar sin_amplitude{0};
};

// Finite sum  sum_i a_i trig_i(nu_i t)  with nu_i >= 0.
//
// Terms are kept canonical: sorted by frequency, one cos and at most one sin
// term per frequency, no sin term at zero frequency. Zero amplitudes are kept
// so that the support of a kernel does not depend on its parameters; use
// prune() to drop them.
template <class Scalar>
class TrigSum {
 public:
  using Term = TrigTerm<Scalar>;

  TrigSum() = default;
  explicit TrigSum(std::vector<Term> terms) : terms_(std::move(terms)) {
    canonicalize();
  }

  static TrigSum cosine(Scalar amplitude, Scalar frequency) {
    return TrigSum({Term{amplitude, frequency, Phase::Cos}});
  }
  static TrigSum sine(Scalar amplitude, Scalar frequency) {
    return TrigSum({Term{amplitude, frequency, Phase::Sin}});
  }

  // Relative tolerance under which two frequencies are the same line.
  static Scalar frequency_tolerance() { return Scalar(1e-12); }

  static bool same_frequency(Scalar a, Scalar b) {
    using std::abs;
    using std::max;
    return abs(a - b) <= frequency_tolerance() * max(Scalar(1), max(a, b));
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  Scalar operator()(Scalar t) const {
    using std::cos;
    using std::sin;
    Scalar sum(0);
    for (const auto& term : terms_) {
      sum += term.amplitude * (term.phase == Phase::Cos ? cos(term.frequency * t)
                                                        : sin(term.frequency * t));
    }
    return sum;
  }

  template <class Derived>
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> operator()(const Eigen::MatrixBase<Derived>& t) const {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(t.size());
    for (Eigen::Index i = 0; i < t.size(); ++i) out[i] = (*this)(t[i]);
    return out;
  }

  Scalar max_abs_amplitude() const {
    using std::abs;
    Scalar m(0);
    for (const auto& term : terms_) m = std::max(m, Scalar(abs(term.amplitude)));
    return m;
  }

  Scalar max_frequency() const { return terms_.empty() ? Scalar(0) : terms_.back().frequency; }

  TrigSum prune(Scalar tol = Scalar(0)) const {
    using std::abs;
    std::vector<Term> kept;
    for (const auto& term : terms_)
      if (abs(term.amplitude) > tol) kept.push_back(term);
    TrigSum out;
    out.terms_ = std::move(kept);
    return out;
  }

  TrigSum& operator+=(const TrigSum& other) {
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
    canonicalize();
    return *this;
  }
  TrigSum& operator-=(const TrigSum& other) { return *this += -other; }
  TrigSum& operator*=(Scalar factor) {
    for (auto& term : terms_) term.amplitude *= factor;
    return *this;
  }

  TrigSum operator-() const {
    TrigSum out(*this);
    out *= Scalar(-1);
    return out;
  }
  friend TrigSum operator+(TrigSum a, const TrigSum& b) { return a += b; }
  friend TrigSum operator-(TrigSum a, const TrigSum& b) { return a -= b; }
  friend TrigSum operator*(TrigSum a, Scalar f) { return a *= f; }
  friend TrigSum operator*(Scalar f, TrigSum a) { return a *= f; }

 private:
  void canonicalize() {
    using std::abs;
    using std::isfinite;
    for (auto& term : terms_) {
      if (!isfinite(term.frequency) || !isfinite(term.amplitude))
        throw std::invalid_argument("TrigSum: non-finite term");
      if (term.frequency < Scalar(0)) {
        term.frequency = -term.frequency;
        if (term.phase == Phase::Sin) term.amplitude = -term.amplitude;
      }
      if (term.frequency <= frequency_tolerance()) term.frequency = Scalar(0);
    }
    std::stable_sort(terms_.begin(), terms_.end(),
                     [](const Term& a, const Term& b) { return a.frequency < b.frequency; });
    std::vector<Term> merged;
    std::size_t i = 0;
    while (i < terms_.size()) {
      const Scalar nu = terms_[i].frequency;
      Scalar cos_amp(0), sin_amp(0);
      bool has_cos = false, has_sin = false;
      std::size_t j = i;
      for (; j < terms_.size() && same_frequency(nu, terms_[j].frequency); ++j) {
        if (terms_[j].phase == Phase::Cos) {
          cos_amp += terms_[j].amplitude;
          has_cos = true;
        } else {
          sin_amp += terms_[j].amplitude;
          has_sin = true;
        }
      }
      if (has_cos) merged.push_back(Term{cos_amp, nu, Phase::Cos});
      if (has_sin && nu > Scalar(0)) merged.push_back(Term{sin_amp, nu, Phase::Sin});
      i = j;
    }
    terms_ = std::move(merged);
  }

  std::vector<Term> terms_;
};

using TrigSumd = TrigSum<double>;

template <class Scalar>
Scalar trig_eval(const TrigSum<Scalar>& s, Scalar t) {
  return s(t);
}

template <class Scalar>
TrigSum<Scalar> trig_derivative(const TrigSum<Scalar>& s) {
  std::vector<TrigTerm<Scalar>> out;
  out.reserve(s.size());
  for (const auto& term : s.terms()) {
    if (term.phase == Phase::Cos)
      out.push_back({-term.amplitude * term.frequency, term.frequency, Phase::Sin});
    else
      out.push_back({term.amplitude * term.frequency, term.frequency, Phase::Cos});
  }
  return TrigSum<Scalar>(std::move(out));
}

// Term-wise antiderivative without constant of integration.
template <class Scalar>
TrigSum<Scalar> trig_antiderivative(const TrigSum<Scalar>& s) {
  std::vector<TrigTerm<Scalar>> out;
  out.reserve(s.size());
  for (const auto& term : s.terms()) {
    if (term.frequency == Scalar(0))
      throw UnsupportedTermError("antiderivative of a zero-frequency cosine term");
    if (term.phase == Phase::Cos)
      out.push_back({term.amplitude / term.frequency, term.frequency, Phase::Sin});
    else
      out.push_back({-term.amplitude / term.frequency, term.frequency, Phase::Cos});
  }
  return TrigSum<Scalar>(std::move(out));
}

template <class Scalar>
std::vector<SpectralLine<Scalar>> trig_line_spectrum(const TrigSum<Scalar>& s) {
  std::vector<SpectralLine<Scalar>> lines;
  for (const auto& term : s.terms()) {
    if (lines.empty() || lines.back().frequency != term.frequency)
      lines.push_back({term.frequency, Scalar(0), Scalar(0)});
    if (term.phase == Phase::Cos)
      lines.back().cos_amplitude += term.amplitude;
    else
      lines.back().sin_amplitude += term.amplitude;
  }
  return lines;
}

// Distinct line frequencies, ascending.
template <class Scalar>
std::vector<Scalar> trig_support(const TrigSum<Scalar>& s) {
  std::vector<Scalar> nu;
  for (const auto& line : trig_line_spectrum(s)) nu.push_back(line.frequency);
  return nu;
}

// A kernel is a sum of lines at positive frequency plus a constant offset.
template <class Scalar>
struct Kernel {
  TrigSum<Scalar> lines;
  Scalar constant{0};

  Kernel() = default;
  Kernel(TrigSum<Scalar> s, Scalar c = Scalar(0)) : constant(c) {
    std::vector<TrigTerm<Scalar>> rest;
    for (const auto& term : s.terms()) {
      if (term.frequency == Scalar(0))
        constant += term.amplitude;
      else
        rest.push_back(term);
    }
    lines = TrigSum<Scalar>(std::move(rest));
  }

  Scalar operator()(Scalar t) const { return lines(t) + constant; }

  // Line spectrum with a zero-frequency row when the constant is non-zero.
  std::vector<SpectralLine<Scalar>> spectrum() const {
    std::vector<SpectralLine<Scalar>> out;
    if (constant != Scalar(0)) out.push_back({Scalar(0), constant, Scalar(0)});
    for (const auto& line : trig_line_spectrum(lines)) out.push_back(line);
    return out;
  }

  Kernel& operator+=(const Kernel& other) {
    lines += other.lines;
    constant += other.constant;
    return *this;
  }
  Kernel& operator*=(Scalar f) {
    lines *= f;
    constant *= f;
    return *this;
  }
  Kernel operator-() const {
    Kernel out(*this);
    out *= Scalar(-1);
    return out;
  }
  friend Kernel operator+(Kernel a, const Kernel& b) { return a += b; }
  friend Kernel operator-(Kernel a, const Kernel& b) { return a += -b; }
  friend Kernel operator*(Kernel a, Scalar f) { return a *= f; }
  friend Kernel operator*(Scalar f, Kernel a) { return a *= f; }
};

using Kerneld = Kernel<double>;

template <class Scalar>
Kernel<Scalar> kernel_derivative(const Kernel<Scalar>& k) {
  return Kernel<Scalar>(trig_derivative(k.lines));
}

}  // namespace cavif
