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

#ifndef CAPRICEP_AUGMENT_HPP_
#define CAPRICEP_AUGMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "capricep/design.hpp"

namespace capricep {

inline constexpr double kAugmentTerdS = 0.002;
inline constexpr std::size_t kHistogramBins = 101;
inline constexpr double kSnrCapDb = 150.0;

/// Base design for augmentation units with the given equivalent rectangular duration.
DesignParams augment_params(double fs, double t_erd_s = kAugmentTerdS, std::uint64_t seed = 1);

struct AugmentReport {
  std::vector<double> snr_db;
  std::vector<double> skewness;
  std::vector<double> energy_ratio;  // sum y^2 / sum x^2
  std::vector<std::vector<std::size_t>> value_histograms;
  std::vector<std::vector<double>> spectra_delta_db;  // per variant, per band
  std::vector<double> spectral_delta_max_db;
  std::vector<double> band_centers_hz;
  double input_skewness = 0.0;
  std::vector<std::size_t> input_histogram;
};

struct AugmentResult {
  std::vector<std::vector<double>> variants;  // full convolutions, input length + support - 1
  std::vector<std::size_t> offsets;           // index of input sample 0's time origin in each variant
  AugmentReport report;
};

/// Unit i uses base_params with seed derive_seed(seed, i) and fs replaced by fs.
AugmentResult augment(std::span<const double> input, double fs, const DesignParams& base_params,
                      std::size_t n_variants, std::uint64_t seed);

/// Filters the input with each given unit.
AugmentResult augment(std::span<const double> input, double fs, std::span<const UnitCapricep> units);

struct FilteredSignal {
  std::vector<double> samples;
  std::size_t offset = 0;  // samples[offset + n] carries x[n] through the unit's time origin
};

/// Full linear convolution of x with the unit's nonzero support, so a delta
/// unit returns x unchanged with offset 0.
FilteredSignal filter_full(std::span<const double> x, const UnitCapricep& unit);

/// 10 log10(sum x^2 / sum (x - g y[. + lag])^2) at the best integer lag and
/// least-squares gain, capped at kSnrCapDb.
double aligned_snr_db(std::span<const double> x, std::span<const double> y, std::size_t max_lag);

/// kHistogramBins bins over [-1, 1] of x / scale, clamped at the edges.
std::vector<std::size_t> value_histogram(std::span<const double> x, double scale);

}  // namespace capricep

#endif  // CAPRICEP_AUGMENT_HPP_
