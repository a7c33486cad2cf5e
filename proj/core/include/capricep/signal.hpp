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

#ifndef CAPRICEP_SIGNAL_HPP_
#define CAPRICEP_SIGNAL_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace capricep {

double energy(std::span<const double> x);
double rms(std::span<const double> x);
double max_abs(std::span<const double> x);
double skewness(std::span<const double> x);

/// 10*log10(power), floored at -300 dB so silent inputs stay finite.
double power_db(double power);

/// Full linear convolution, length a.size() + b.size() - 1. Direct summation
/// when the shorter operand has <= 64 taps, FFT otherwise.
std::vector<double> convolve(std::span<const double> a, std::span<const double> b);

/// q[n] = sum_j y[n + j] * u[j] for n in [0, y.size()), y zero beyond its end.
/// This is convolution of y with the time-reversed kernel, indexed so that a
/// copy of u starting at sample p in y yields its correlation peak at q[p].
std::vector<double> correlate(std::span<const double> y, std::span<const double> u);

/// Largest |sum_n a[n] b[n + lag]| over all lags, divided by sqrt(E_a E_b).
double max_normalized_cross_correlation(std::span<const double> a, std::span<const double> b);

/// Runs body(i) for i in [0, count) on up to hardware_concurrency threads.
/// Work is split into contiguous blocks; callers that reduce must do so by index.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace capricep

#endif  // CAPRICEP_SIGNAL_HPP_
