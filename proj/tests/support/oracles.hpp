/**
 * Copyright 2026 The CAPRICEP Toolkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Reference implementations used as test oracles. Written for clarity, not
// speed, and independent of the library's FFT paths.

#ifndef CAPRICEP_TESTS_ORACLES_HPP_
#define CAPRICEP_TESTS_ORACLES_HPP_

#include <cmath>
#include <complex>
#include <cstddef>
#include <filesystem>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace oracle {

// X[k] = sum_n x[n] exp(-j 2 pi k n / N) for k in [0, bins).
inline std::vector<std::complex<double>> dft(std::span<const double> x, std::size_t n,
                                             std::size_t bins) {
  std::vector<std::complex<double>> tw(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = -2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    tw[i] = {std::cos(a), std::sin(a)};
  }
  std::vector<std::complex<double>> out(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    std::complex<double> acc = 0.0;
    std::size_t idx = 0;
    for (std::size_t t = 0; t < x.size() && t < n; ++t) {
      acc += x[t] * tw[idx];
      idx += k;
      if (idx >= n) idx -= n * (idx / n);
    }
    out[k] = acc;
  }
  return out;
}

inline std::vector<double> convolve(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> y(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) y[i + j] += a[i] * b[j];
  }
  return y;
}

// q[n] = sum_j y[n + j] u[j], y taken as zero past its end.
inline std::vector<double> correlate(std::span<const double> y, std::span<const double> u) {
  std::vector<double> q(y.size(), 0.0);
  for (std::size_t n = 0; n < y.size(); ++n) {
    double acc = 0.0;
    for (std::size_t j = 0; j < u.size() && n + j < y.size(); ++j) acc += y[n + j] * u[j];
    q[n] = acc;
  }
  return q;
}

// Impulse response of (a2 - a1 z^-1 + z^-2) / (1 - a1 z^-1 + a2 z^-2) by
// running the difference equation.
inline std::vector<double> second_order_allpass_ir(double f_hz, double b_hz, double fs,
                                                   std::size_t length) {
  const double r = std::exp(-std::numbers::pi * b_hz / fs);
  const double a1 = 2.0 * r * std::cos(2.0 * std::numbers::pi * f_hz / fs);
  const double a2 = r * r;
  std::vector<double> y(length, 0.0);
  double x1 = 0.0, x2 = 0.0, y1 = 0.0, y2 = 0.0;
  for (std::size_t n = 0; n < length; ++n) {
    const double x = n == 0 ? 1.0 : 0.0;
    const double v = a2 * x - a1 * x1 + x2 + a1 * y1 - a2 * y2;
    x2 = x1;
    x1 = x;
    y2 = y1;
    y1 = v;
    y[n] = v;
  }
  return y;
}

inline double wrap(double a) { return std::remainder(a, 2.0 * std::numbers::pi); }

inline std::vector<double> white_noise(std::size_t n, double sigma, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> dist(0.0, sigma);
  std::vector<double> x(n);
  for (double& v : x) v = dist(engine);
  return x;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("capricep_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace oracle

#endif  // CAPRICEP_TESTS_ORACLES_HPP_
