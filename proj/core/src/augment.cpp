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

#include "capricep/augment.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "capricep/bands.hpp"
#include "capricep/error.hpp"
#include "capricep/fft.hpp"
#include "capricep/rng.hpp"
#include "capricep/signal.hpp"

namespace capricep {
namespace {

std::vector<double> spectrum_power(std::span<const double> x, std::size_t n_fft) {
  RealFft fft(n_fft);
  std::vector<std::complex<double>> spec(fft.bins());
  fft.forward(x, spec);
  std::vector<double> p(spec.size());
  for (std::size_t k = 0; k < spec.size(); ++k) p[k] = std::norm(spec[k]);
  return p;
}

double band_sum(std::span<const double> p, const Band& b) {
  double acc = 0.0;
  for (std::size_t k = b.first_bin; k < b.last_bin; ++k) acc += p[k];
  return acc;
}

}  // namespace

DesignParams augment_params(double fs, double t_erd_s, std::uint64_t seed) {
  if (!(t_erd_s > 0.0)) throw Error(ErrorCode::kInvalidArgument, "t_erd must be positive");
  DesignParams p;
  p.fs = fs;
  p.fd = kTerdRatio / t_erd_s;
  p.seed = seed;
  return p;
}

FilteredSignal filter_full(std::span<const double> x, const UnitCapricep& unit) {
  const auto& h = unit.samples;
  std::size_t first = 0, last = h.size();
  while (first < last && h[first] == 0.0) ++first;
  while (last > first && h[last - 1] == 0.0) --last;
  if (first == last) throw Error(ErrorCode::kInvalidArgument, "unit has no nonzero taps");
  if (unit.center_index < first || unit.center_index >= last) {
    throw Error(ErrorCode::kInvalidArgument, "unit time origin lies outside its support");
  }
  return {convolve(x, std::span<const double>(h).subspan(first, last - first)), unit.center_index - first};
}

double aligned_snr_db(std::span<const double> x, std::span<const double> y, std::size_t max_lag) {
  if (x.size() != y.size()) throw Error(ErrorCode::kLengthMismatch, "signals differ in length");
  const double ex = energy(x);
  if (ex == 0.0) throw Error(ErrorCode::kEmptyInput, "reference signal has no energy");
  const std::size_t len = x.size();
  const std::size_t n = next_pow2(2 * len);
  RealFft fft(n);
  std::vector<std::complex<double>> fx(fft.bins()), fy(fft.bins());
  fft.forward(x, fx);
  fft.forward(y, fy);
  for (std::size_t k = 0; k < fx.size(); ++k) fx[k] = fy[k] * std::conj(fx[k]);
  std::vector<double> xc(n);
  fft.inverse(fx, xc);
  // xc[l] ~ sum_n y[n + l] x[n]; negative lags wrap to the top of the buffer.
  const auto lag_limit = static_cast<std::ptrdiff_t>(std::min(max_lag, len - 1));
  std::ptrdiff_t best_lag = 0;
  double best = -1.0;
  for (std::ptrdiff_t l = -lag_limit; l <= lag_limit; ++l) {
    const double v = std::abs(xc[static_cast<std::size_t>(l < 0 ? l + static_cast<std::ptrdiff_t>(n) : l)]);
    if (v > best) {
      best = v;
      best_lag = l;
    }
  }
  double xy = 0.0, yy = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    const std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) + best_lag;
    if (j < 0 || j >= static_cast<std::ptrdiff_t>(len)) continue;
    xy += x[i] * y[j];
    yy += y[j] * y[j];
  }
  const double g = yy > 0.0 ? xy / yy : 0.0;
  double err = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    const std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) + best_lag;
    const double yj = (j < 0 || j >= static_cast<std::ptrdiff_t>(len)) ? 0.0 : y[j];
    const double d = x[i] - g * yj;
    err += d * d;
  }
  if (err == 0.0) return kSnrCapDb;
  return std::min(kSnrCapDb, 10.0 * std::log10(ex / err));
}

std::vector<std::size_t> value_histogram(std::span<const double> x, double scale) {
  std::vector<std::size_t> h(kHistogramBins, 0);
  if (!(scale > 0.0)) throw Error(ErrorCode::kInvalidArgument, "histogram scale must be positive");
  const double bins = static_cast<double>(kHistogramBins);
  for (double v : x) {
    const double u = std::clamp(v / scale, -1.0, 1.0);
    const auto b = static_cast<std::size_t>(std::min(bins - 1.0, std::floor((u + 1.0) / 2.0 * bins)));
    ++h[b];
  }
  return h;
}

AugmentResult augment(std::span<const double> input, double fs, std::span<const UnitCapricep> units) {
  if (input.empty()) throw Error(ErrorCode::kEmptyInput, "empty input signal");
  if (units.empty()) throw Error(ErrorCode::kInvalidArgument, "need at least one variant");
  for (const auto& u : units) {
    if (u.fs != fs) throw Error(ErrorCode::kSampleRateMismatch, "unit and input sample rates differ");
  }
  const double peak = max_abs(input);
  if (peak == 0.0) throw Error(ErrorCode::kEmptyInput, "input signal is all zeros");
  const double ex = energy(input);

  std::size_t longest = 1;
  for (const auto& u : units) longest = std::max(longest, u.samples.size());
  const std::size_t n_fft = next_pow2(input.size() + longest - 1);
  const auto bands = third_octave_bands(fs, std::max<std::size_t>(n_fft, 2));
  const auto px = spectrum_power(input, n_fft);
  std::vector<double> px_band;
  for (const auto& b : bands) px_band.push_back(band_sum(px, b));

  const std::size_t count = units.size();
  AugmentResult res;
  auto& r = res.report;
  res.variants.resize(count);
  res.offsets.resize(count);
  r.snr_db.resize(count);
  r.skewness.resize(count);
  r.energy_ratio.resize(count);
  r.value_histograms.resize(count);
  r.spectra_delta_db.resize(count);
  r.spectral_delta_max_db.resize(count);
  for (const auto& b : bands) r.band_centers_hz.push_back(b.center_hz);
  r.input_skewness = skewness(input);
  r.input_histogram = value_histogram(input, peak);

  parallel_for(count, [&](std::size_t i) {
    auto f = filter_full(input, units[i]);
    auto& y = f.samples;
    // Reference placed on the variant's time axis for the lag search.
    std::vector<double> ref(y.size(), 0.0);
    std::copy(input.begin(), input.end(), ref.begin() + static_cast<std::ptrdiff_t>(f.offset));
    r.snr_db[i] = aligned_snr_db(ref, y, units[i].samples.size());
    r.skewness[i] = skewness(y);
    r.energy_ratio[i] = energy(y) / ex;
    r.value_histograms[i] = value_histogram(y, peak);
    const auto py = spectrum_power(y, n_fft);
    double worst = 0.0;
    for (std::size_t b = 0; b < bands.size(); ++b) {
      double d = 0.0;
      if (px_band[b] > 0.0) d = 10.0 * std::log10(std::max(band_sum(py, bands[b]), 1e-300) / px_band[b]);
      r.spectra_delta_db[i].push_back(d);
      worst = std::max(worst, std::abs(d));
    }
    r.spectral_delta_max_db[i] = worst;
    res.offsets[i] = f.offset;
    res.variants[i] = std::move(y);
  });
  return res;
}

AugmentResult augment(std::span<const double> input, double fs, const DesignParams& base_params,
                      std::size_t n_variants, std::uint64_t seed) {
  if (input.empty()) throw Error(ErrorCode::kEmptyInput, "empty input signal");
  if (n_variants < 1) throw Error(ErrorCode::kInvalidArgument, "n_variants must be at least 1");
  std::vector<UnitCapricep> units(n_variants);
  parallel_for(n_variants, [&](std::size_t i) {
    DesignParams p = base_params;
    p.fs = fs;
    p.seed = derive_seed(seed, i);
    units[i] = generate_unit(p);
  });
  return augment(input, fs, units);
}

}  // namespace capricep
