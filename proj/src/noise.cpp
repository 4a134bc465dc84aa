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

#include "cavif/noise.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "cavif/errors.hpp"
#include "cavif/rng.hpp"

namespace cavif {

namespace {

std::string describe(const NoiseProvenance& prov) {
  std::string s = prov.label.empty() ? "covariance" : prov.label;
  if (prov.convention) s += " [" + to_string(*prov.convention) + "]";
  return s;
}

std::string offenders(const NoiseProvenance& prov, double frequency) {
  std::ostringstream os;
  bool first = true;
  for (const auto& c : prov.contributions) {
    if (!TrigSumd::same_frequency(c.frequency, frequency)) continue;
    // Covariance is -N, so positive noise-kernel lines make it negative.
    if (c.cos_amplitude > 0.0) {
      os << (first ? "" : ", ") << "(" << c.k << "," << c.j << "," << c.channel << ")";
      first = false;
    }
  }
  return first ? std::string("none recorded") : os.str();
}

double checked_weight(double amp, double frequency, const NoiseProvenance& prov,
                      std::vector<std::string>& warnings) {
  if (amp >= 0.0) return amp;
  std::ostringstream os;
  os.precision(17);
  if (amp >= -kClipTolerance) {
    os << describe(prov) << ": line at frequency " << frequency << " has amplitude " << amp
       << ", clipped to 0";
    warnings.push_back(os.str());
    return 0.0;
  }
  os << describe(prov) << " is not positive semidefinite: line at frequency " << frequency
     << " has amplitude " << amp << "; pairs (k,j,channel): " << offenders(prov, frequency);
  throw NotPsdError(os.str());
}

}  // namespace

double NoiseSpectrum::covariance(double dt) const {
  double c = constant_weight;
  for (const auto& l : lines) c += l.weight * std::cos(l.frequency * dt);
  return c;
}

double NoiseSpectrum::derivative_variance() const {
  double v = 0.0;
  for (const auto& l : lines) v += l.weight * l.frequency * l.frequency;
  return v;
}

double NoiseSpectrum::max_frequency() const { return lines.empty() ? 0.0 : lines.back().frequency; }

NoiseSpectrum make_noise_spectrum(const Kerneld& covariance, const NoiseProvenance& prov) {
  NoiseSpectrum s;
  for (const auto& line : trig_line_spectrum(covariance.lines)) {
    if (line.sin_amplitude != 0.0)
      throw std::invalid_argument(describe(prov) + ": stationary covariance must be a cosine sum");
    s.lines.push_back({line.frequency, checked_weight(line.cos_amplitude, line.frequency, prov, s.warnings)});
  }
  s.constant_weight = checked_weight(covariance.constant, 0.0, prov, s.warnings);
  return s;
}

Kerneld noise_covariance(const Kerneld& noise_kernel) { return (-kHbar * kHbar) * noise_kernel; }

NoiseProcess::NoiseProcess(const NoiseSpectrum& spectrum, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  draws_.reserve(spectrum.lines.size());
  for (const auto& l : spectrum.lines) {
    const double a = normal(rng);
    const double b = normal(rng);
    draws_.push_back({l.frequency, std::sqrt(l.weight), a, b});
  }
  constant_scale_ = std::sqrt(spectrum.constant_weight);
  a0_ = normal(rng);
}

double NoiseProcess::value(double t) const {
  double x = constant_scale_ * a0_;
  for (const auto& d : draws_) x += d.scale * (d.a * std::cos(d.frequency * t) + d.b * std::sin(d.frequency * t));
  return x;
}

double NoiseProcess::derivative(double t) const {
  double x = 0.0;
  for (const auto& d : draws_)
    x += d.scale * d.frequency * (-d.a * std::sin(d.frequency * t) + d.b * std::cos(d.frequency * t));
  return x;
}

BuiltProcess build_process(const Kerneld& covariance, std::uint64_t seed, std::uint64_t stream,
                           const NoiseProvenance& prov) {
  BuiltProcess out{make_noise_spectrum(covariance, prov), {}, seed, stream};
  std::mt19937_64 rng = make_stream(seed, stream, StreamTag::Noise);
  out.process = NoiseProcess(out.spectrum, rng);
  return out;
}

Eigen::VectorXd sample_path(const NoiseProcess& process, const Eigen::VectorXd& grid) {
  Eigen::VectorXd x(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) x[i] = process.value(grid[i]);
  return x;
}

Eigen::VectorXd sample_derivative(const NoiseProcess& process, const Eigen::VectorXd& grid) {
  Eigen::VectorXd x(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) x[i] = process.derivative(grid[i]);
  return x;
}

CovarianceReport empirical_covariance(const Eigen::MatrixXd& paths, const Eigen::VectorXd& grid,
                                      const Kerneld& target) {
  if (paths.cols() != grid.size()) throw std::invalid_argument("paths and grid sizes differ");
  if (paths.rows() < 1) throw std::invalid_argument("empirical covariance needs at least one path");
  const double n = static_cast<double>(paths.rows());
  CovarianceReport r;
  r.covariance = paths.transpose() * paths / n;
  const Eigen::MatrixXd sq = paths.array().square().matrix();
  const Eigen::MatrixXd second = sq.transpose() * sq / n;
  const Eigen::Index m = grid.size();
  r.target.resize(m, m);
  r.standard_error.resize(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      r.target(i, j) = target(grid[i] - grid[j]);
      const double c = r.covariance(i, j);
      const double var = n > 1.0 ? std::max(0.0, second(i, j) - c * c) * n / (n - 1.0) : 0.0;
      r.standard_error(i, j) = std::sqrt(var / n);
      const double dev = std::abs(c - r.target(i, j));
      double z = 0.0;
      if (r.standard_error(i, j) > 0.0)
        z = dev / r.standard_error(i, j);
      else if (dev > 0.0)
        z = std::numeric_limits<double>::infinity();
      if (z > r.max_studentized) {
        r.max_studentized = z;
        r.worst_row = i;
        r.worst_col = j;
      }
    }
  }
  return r;
}

DenseGaussianSampler::DenseGaussianSampler(const Kerneld& covariance, const Eigen::VectorXd& grid) {
  const Eigen::Index m = grid.size();
  Eigen::MatrixXd c(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) c(i, j) = covariance(grid[i] - grid[j]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c);
  if (es.info() != Eigen::Success) throw std::runtime_error("covariance eigendecomposition failed");
  Eigen::VectorXd lambda = es.eigenvalues();
  for (Eigen::Index i = 0; i < m; ++i) {
    if (lambda[i] < 0.0) {
      clipped_ += -lambda[i];
      lambda[i] = 0.0;
    }
  }
  factor_ = es.eigenvectors() * lambda.cwiseSqrt().asDiagonal();
}

Eigen::VectorXd DenseGaussianSampler::sample(std::mt19937_64& rng) const {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd u(factor_.cols());
  for (Eigen::Index i = 0; i < u.size(); ++i) u[i] = normal(rng);
  return factor_ * u;
}

}  // namespace cavif
