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

#include "capricep/bands.hpp"

#include <cmath>
#include <stdexcept>

#include "capricep/fft.hpp"

namespace capricep {

std::vector<Band> third_octave_bands(double fs, std::size_t n_fft, double min_hz) {
  if (fs <= 0.0 || n_fft < 2) throw std::invalid_argument("third_octave_bands: bad grid");
  const double bin_hz = fs / static_cast<double>(n_fft);
  const double nyquist = fs / 2.0;
  const double edge = std::pow(2.0, 1.0 / 6.0);
  std::vector<Band> bands;
  for (int k = -40; k <= 40; ++k) {
    const double fc = 1000.0 * std::pow(2.0, k / 3.0);
    const double lo = fc / edge;
    const double hi = fc * edge;
    if (fc < min_hz || hi >= nyquist) continue;
    const auto first = static_cast<std::size_t>(std::ceil(lo / bin_hz));
    const auto last = static_cast<std::size_t>(std::ceil(hi / bin_hz));
    if (last <= first) continue;
    bands.push_back({fc, lo, hi, first, last});
  }
  return bands;
}

std::vector<double> band_mean_power(std::span<const std::complex<double>> spectrum,
                                    std::span<const Band> bands) {
  std::vector<double> out;
  out.reserve(bands.size());
  for (const auto& b : bands) {
    if (b.last_bin > spectrum.size()) throw std::invalid_argument("band_mean_power: band beyond spectrum");
    double acc = 0.0;
    for (std::size_t k = b.first_bin; k < b.last_bin; ++k) acc += std::norm(spectrum[k]);
    out.push_back(acc / static_cast<double>(b.last_bin - b.first_bin));
  }
  return out;
}

std::vector<double> band_mean_power(std::span<const double> x, std::size_t n_fft,
                                    std::span<const Band> bands) {
  RealFft fft(n_fft);
  std::vector<std::complex<double>> spec(fft.bins());
  fft.forward(x, spec);
  return band_mean_power(spec, bands);
}

}  // namespace capricep
