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

#include "capricep/signal.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <exception>
#include <mutex>
#include <thread>

#include "capricep/fft.hpp"

namespace capricep {

double energy(std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return acc;
}

double rms(std::span<const double> x) {
  return x.empty() ? 0.0 : std::sqrt(energy(x) / static_cast<double>(x.size()));
}

double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double skewness(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  const double n = static_cast<double>(x.size());
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  double m2 = 0.0, m3 = 0.0;
  for (double v : x) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= n;
  m3 /= n;
  return m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
}

double power_db(double power) {
  return power > 1e-30 ? 10.0 * std::log10(power) : -300.0;
}

std::vector<double> convolve(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out_len = a.size() + b.size() - 1;
  std::vector<double> out(out_len, 0.0);
  const auto& shorter = a.size() <= b.size() ? a : b;
  const auto& longer = a.size() <= b.size() ? b : a;
  if (shorter.size() <= 64) {
    for (std::size_t j = 0; j < shorter.size(); ++j) {
      const double w = shorter[j];
      if (w == 0.0) continue;
      for (std::size_t i = 0; i < longer.size(); ++i) out[i + j] += w * longer[i];
    }
    return out;
  }
  const std::size_t n = next_pow2(out_len);
  RealFft fft(n);
  std::vector<std::complex<double>> fa(fft.bins()), fb(fft.bins());
  fft.forward(a, fa);
  fft.forward(b, fb);
  for (std::size_t k = 0; k < fa.size(); ++k) fa[k] *= fb[k];
  std::vector<double> full(n);
  fft.inverse(fa, full);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < out_len; ++i) out[i] = full[i] * scale;
  return out;
}

std::vector<double> correlate(std::span<const double> y, std::span<const double> u) {
  if (y.empty()) return {};
  if (u.empty()) return std::vector<double>(y.size(), 0.0);
  const std::size_t n = next_pow2(y.size() + u.size() - 1);
  RealFft fft(n);
  std::vector<std::complex<double>> fy(fft.bins()), fu(fft.bins());
  fft.forward(y, fy);
  fft.forward(u, fu);
  for (std::size_t k = 0; k < fy.size(); ++k) fy[k] *= std::conj(fu[k]);
  std::vector<double> full(n);
  fft.inverse(fy, full);
  const double scale = 1.0 / static_cast<double>(n);
  std::vector<double> q(y.size());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = full[i] * scale;
  return q;
}

double max_normalized_cross_correlation(std::span<const double> a, std::span<const double> b) {
  const double norm = std::sqrt(energy(a) * energy(b));
  if (norm == 0.0) return 0.0;
  const std::size_t n = next_pow2(a.size() + b.size() - 1);
  RealFft fft(n);
  std::vector<std::complex<double>> fa(fft.bins()), fb(fft.bins());
  fft.forward(a, fa);
  fft.forward(b, fb);
  for (std::size_t k = 0; k < fa.size(); ++k) fa[k] = std::conj(fa[k]) * fb[k];
  std::vector<double> full(n);
  fft.inverse(fa, full);
  return max_abs(full) / (static_cast<double>(n) * norm);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(hw, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::jthread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = count * w / workers;
    const std::size_t end = count * (w + 1) / workers;
    threads.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  threads.clear();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace capricep
