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

#ifndef CAPRICEP_FFT_HPP_
#define CAPRICEP_FFT_HPP_

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace capricep {

/// Real-input FFT of a fixed length backed by FFTW. Both directions are
/// unnormalized: inverse(forward(x)) == n * x.
///
/// Instances are movable, not copyable, and not safe to share between threads.
/// Creating instances from several threads at once is fine.
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(RealFft&&) noexcept;
  RealFft& operator=(RealFft&&) noexcept;
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const noexcept { return n_; }
  std::size_t bins() const noexcept { return n_ / 2 + 1; }

  /// `in` may be shorter than size(); the remainder is zero-padded.
  void forward(std::span<const double> in, std::span<std::complex<double>> out);
  /// Hermitian half-spectrum (bins() values) to size() real samples.
  void inverse(std::span<const std::complex<double>> in, std::span<double> out);

 private:
  struct Impl;
  std::size_t n_;
  std::unique_ptr<Impl> impl_;
};

/// Smallest power of two that is >= n (and >= 1).
std::size_t next_pow2(std::size_t n);

bool is_pow2(std::size_t n);

}  // namespace capricep

#endif  // CAPRICEP_FFT_HPP_
