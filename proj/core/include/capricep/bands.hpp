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

#ifndef CAPRICEP_BANDS_HPP_
#define CAPRICEP_BANDS_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace capricep {

struct Band {
  double center_hz;
  double lower_hz;
  double upper_hz;
  std::size_t first_bin;  // inclusive
  std::size_t last_bin;   // exclusive
};

/// Base-2 1/3-octave bands (centers 1 kHz * 2^(k/3), edges at 2^(+-1/6))
/// laid over the rfft bins of an n_fft transform. Bands are kept only when
/// they hold at least one bin, lie at or above min_hz, and end below Nyquist.
std::vector<Band> third_octave_bands(double fs, std::size_t n_fft, double min_hz = 20.0);

/// Mean of |X[k]|^2 over each band's bins.
std::vector<double> band_mean_power(std::span<const std::complex<double>> spectrum,
                                    std::span<const Band> bands);

/// Convenience: rfft of x zero-padded to n_fft, then band_mean_power.
std::vector<double> band_mean_power(std::span<const double> x, std::size_t n_fft,
                                    std::span<const Band> bands);

}  // namespace capricep

#endif  // CAPRICEP_BANDS_HPP_
