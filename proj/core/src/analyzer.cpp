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

#include "capricep/analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "capricep/error.hpp"
#include "capricep/fft.hpp"
#include "capricep/signal.hpp"

namespace capricep {
namespace {

constexpr double kClipLevel = 0.999;

// Correlates one recording with several kernels, reusing its spectrum.
std::vector<std::vector<double>> correlate_many(std::span<const double> y,
                                                std::span<const UnitCapricep> units,
                                                std::size_t count) {
  std::size_t longest = 0;
  for (std::size_t m = 0; m < count; ++m) longest = std::max(longest, units[m].samples.size());
  const std::size_t n = next_pow2(y.size() + longest);
  RealFft fft(n);
  std::vector<std::complex<double>> fy(fft.bins());
  fft.forward(y, fy);
  std::vector<std::vector<double>> out(count);
  parallel_for(count, [&](std::size_t m) {
    RealFft local(n);
    std::vector<std::complex<double>> fu(local.bins());
    local.forward(units[m].samples, fu);
    for (std::size_t k = 0; k < fu.size(); ++k) fu[k] = fy[k] * std::conj(fu[k]);
    std::vector<double> full(n);
    local.inverse(fu, full);
    const double scale = 1.0 / static_cast<double>(n);
    out[m].resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) out[m][i] = full[i] * scale;
  });
  return out;
}

double relative_db(double power, double reference) {
  if (!(power > 0.0) || !(reference > 0.0)) return -300.0;
  return std::max(-300.0, 10.0 * std::log10(power / reference));
}

double mean(std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += v;
  return x.empty() ? 0.0 : acc / static_cast<double>(x.size());
}

}  // namespace

CompressedSignals compress(std::span<const double> recorded, std::span<const UnitCapricep> units,
                           std::size_t n_o) {
  if (units.size() != 4) throw Error(ErrorCode::kInvalidArgument, "need exactly four units");
  if (n_o == 0) throw Error(ErrorCode::kInvalidArgument, "n_o must be positive");
  if (recorded.size() < 8 * n_o) {
    throw Error(ErrorCode::kRecordingTooShort,
                "recording has " + std::to_string(recorded.size()) +
                    " samples, one 8-cycle needs " + std::to_string(8 * n_o));
  }
  auto qs = correlate_many(recorded, units, 4);
  CompressedSignals out;
  for (std::size_t m = 0; m < 4; ++m) out.q[m] = std::move(qs[m]);
  return out;
}

std::array<std::vector<double>, 4> orthogonalize(const CompressedSignals& q,
                                                 const WeightMatrix& weights, std::size_t n_o) {
  std::array<std::vector<double>, 4> r;
  for (std::size_t m = 0; m < 4; ++m) {
    const auto& src = q.q[m];
    if (src.size() < 8 * n_o) {
      throw Error(ErrorCode::kRecordingTooShort, "compressed signal shorter than 8 * n_o");
    }
    const std::size_t len = src.size() - 7 * n_o;
    r[m].assign(len, 0.0);
    for (std::size_t k = 0; k < 8; ++k) {
      const double w = weights[m][k] / 8.0;
      const double* s = src.data() + k * n_o;
      for (std::size_t n = 0; n < len; ++n) r[m][n] += w * s[n];
    }
  }
  return r;
}

std::vector<double> synchronous_average(std::span<const double> r_itr, std::int64_t n_ini,
                                        std::size_t n_o, std::span<const std::size_t> omega) {
  if (omega.empty()) {
    throw Error(ErrorCode::kRecordingTooShort, "recording too short for one clean cycle");
  }
  std::vector<double> out(n_o, 0.0);
  for (std::size_t c : omega) {
    const std::int64_t start = n_ini + static_cast<std::int64_t>(8 * c * n_o);
    if (start < 0 || static_cast<std::size_t>(start) + n_o > r_itr.size()) {
      throw Error(ErrorCode::kInvalidArgument, "cycle " + std::to_string(c) + " outside the signal");
    }
    const double* src = r_itr.data() + start;
    for (std::size_t t = 0; t < n_o; ++t) out[t] += src[t];
  }
  const double inv = 1.0 / static_cast<double>(omega.size());
  for (double& v : out) v *= inv;
  return out;
}

Alignment find_alignment(const CompressedSignals& q, std::size_t n_o, std::size_t pre_roll) {
  const auto& q1 = q.q[0];
  if (q1.size() < 8 * n_o) throw Error(ErrorCode::kRecordingTooShort, "too short to align");
  std::vector<double> fold(n_o, 0.0);
  for (std::size_t n = 0; n < q1.size(); ++n) fold[n % n_o] += q1[n] * q1[n];
  const auto phase = static_cast<std::size_t>(std::max_element(fold.begin(), fold.end()) - fold.begin());

  const std::size_t pulses = (q1.size() - phase + n_o - 1) / n_o;
  std::array<double, 4> score{};
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t i = 0; i < pulses; ++i) {
      const std::size_t p = phase + i * n_o;
      const std::size_t k = (i + 8 - j) % 8;
      score[j] += q1[p] * (q.q[1][p] * kB4[1][k] + q.q[2][p] * kB4[2][k]);
    }
  }
  const auto j = static_cast<std::size_t>(std::max_element(score.begin(), score.end()) - score.begin());

  double peak = 0.0;
  for (std::size_t i = 0; i < pulses; ++i) peak = std::max(peak, std::abs(q1[phase + i * n_o]));
  if (peak == 0.0) throw Error(ErrorCode::kRecordingTooShort, "no pulses found in the recording");
  for (std::size_t p = phase + j * n_o; p < q1.size(); p += 4 * n_o) {
    if (std::abs(q1[p]) >= 0.5 * peak) {
      const auto first = static_cast<std::int64_t>(p);
      return {first, first - static_cast<std::int64_t>(pre_roll)};
    }
  }
  throw Error(ErrorCode::kRecordingTooShort, "no pulse train start found");
}

std::vector<std::size_t> clean_cycles(std::int64_t n_ini, std::size_t n_o, std::size_t n_repeats,
                                      std::size_t r_itr_length) {
  std::vector<std::size_t> omega;
  const std::size_t cycles = n_repeats / 8;
  for (std::size_t c = 1; c + 1 < cycles; ++c) {
    const std::int64_t start = n_ini + static_cast<std::int64_t>(8 * c * n_o);
    if (start >= 0 && static_cast<std::size_t>(start) + n_o <= r_itr_length) omega.push_back(c);
  }
  return omega;
}

std::optional<std::vector<double>> background_band_power(std::span<const double> silence, double fs,
                                                         std::size_t n_o, std::span<const Band> bands,
                                                         std::size_t n_cycles) {
  if (silence.empty() || static_cast<double>(silence.size()) < fs) return std::nullopt;
  if (max_abs(silence) >= kClipLevel) return std::nullopt;
  const std::size_t seg = std::min(n_o, silence.size());
  const std::size_t hop = std::max<std::size_t>(1, seg / 2);
  // Hann window scaled to sum(w^2) = seg so white noise keeps its power.
  std::vector<double> w(seg);
  double w2 = 0.0;
  for (std::size_t i = 0; i < seg; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * (static_cast<double>(i) + 0.5) /
                                 static_cast<double>(seg));
    w2 += w[i] * w[i];
  }
  const double wscale = std::sqrt(static_cast<double>(seg) / w2);
  for (double& v : w) v *= wscale;

  RealFft fft(n_o);
  std::vector<std::complex<double>> spec(fft.bins());
  std::vector<double> acc(fft.bins(), 0.0);
  std::vector<double> frame(seg);
  std::size_t frames = 0;
  for (std::size_t start = 0; start + seg <= silence.size(); start += hop) {
    for (std::size_t i = 0; i < seg; ++i) frame[i] = silence[start + i] * w[i];
    fft.forward(frame, spec);
    for (std::size_t k = 0; k < spec.size(); ++k) acc[k] += std::norm(spec[k]);
    ++frames;
  }
  const double scale = static_cast<double>(n_o) / static_cast<double>(seg) /
                       (static_cast<double>(frames) * 8.0 * static_cast<double>(n_cycles));
  std::vector<double> out;
  for (const auto& b : bands) {
    double sum = 0.0;
    for (std::size_t k = b.first_bin; k < b.last_bin; ++k) sum += acc[k];
    out.push_back(sum * scale / static_cast<double>(b.last_bin - b.first_bin));
  }
  return out;
}

DecompositionResult decompose(std::span<const double> recorded, std::span<const double> pre_silence,
                              const SequenceSet& set, const AnalysisOptions& options) {
  const std::size_t n_o = set.n_o;
  if (recorded.size() < set.sequence_length()) {
    throw Error(ErrorCode::kLengthMismatch,
                "recording length mismatch: expected at least " +
                    std::to_string(set.sequence_length()) + " samples, got " +
                    std::to_string(recorded.size()));
  }
  if (!(options.input_scale > 0.0)) throw Error(ErrorCode::kInvalidArgument, "input scale must be positive");

  DecompositionResult res;
  res.fs = set.fs;
  res.n_o = n_o;
  res.pre_roll = options.pre_roll.value_or(n_o / 8);
  if (res.pre_roll >= n_o) throw Error(ErrorCode::kInvalidArgument, "pre-roll must be shorter than n_o");

  auto q = compress(recorded, set.units, n_o);
  res.alignment = find_alignment(q, n_o, res.pre_roll);
  q.n_ini = res.alignment.n_ini;
  const auto r_itr = orthogonalize(q, kB4, n_o);
  res.omega = clean_cycles(q.n_ini, n_o, set.n_repeats, r_itr[0].size());
  if (res.omega.empty()) {
    throw Error(ErrorCode::kRecordingTooShort, "recording too short for one clean cycle");
  }

  std::array<std::vector<double>, 4> r;
  parallel_for(4, [&](std::size_t m) { r[m] = synchronous_average(r_itr[m], q.n_ini, n_o, res.omega); });

  // Unscaled estimate first; it predicts the recording from the unscaled test signal.
  std::vector<double> r_mean(n_o, 0.0);
  for (std::size_t m = 0; m < 3; ++m) {
    for (std::size_t t = 0; t < n_o; ++t) r_mean[t] += r[m][t] / 3.0;
  }

  // Residual after removing the LTI prediction, compressed per sequence and
  // split into the eight polarity segments of a cycle.
  const auto x = set.test_signal();
  const auto predicted = convolve(x, r_mean);
  std::vector<double> residual(recorded.begin(), recorded.end());
  for (std::size_t n = 0; n < residual.size(); ++n) {
    const std::int64_t i = static_cast<std::int64_t>(n) - q.n_ini;
    if (i >= 0 && static_cast<std::size_t>(i) < predicted.size()) residual[n] -= predicted[i];
  }
  const auto qe = correlate_many(residual, set.units, 3);

  const double inv_scale = 1.0 / options.input_scale;
  const double inv_scale2 = inv_scale * inv_scale;
  res.bands = third_octave_bands(set.fs, n_o);
  const std::size_t nb = res.bands.size();

  std::vector<double> nonl_power(nb, 0.0);
  res.nonlinear_ti.assign(n_o, 0.0);
  std::vector<double> dev(n_o);
  for (std::size_t m = 0; m < 3; ++m) {
    for (std::size_t k = 0; k < 8; ++k) {
      std::fill(dev.begin(), dev.end(), 0.0);
      for (std::size_t c : res.omega) {
        const std::int64_t start = q.n_ini + static_cast<std::int64_t>((8 * c + k) * n_o);
        for (std::size_t t = 0; t < n_o; ++t) {
          const auto idx = static_cast<std::size_t>(start) + t;
          if (idx < qe[m].size()) dev[t] += qe[m][idx];
        }
      }
      const double w = kB4[m][k] * inv_scale / static_cast<double>(res.omega.size());
      for (double& v : dev) v *= w;
      for (std::size_t t = 0; t < n_o; ++t) res.nonlinear_ti[t] += dev[t] * dev[t] / 24.0;
      const auto p = band_mean_power(dev, n_o, res.bands);
      for (std::size_t b = 0; b < nb; ++b) nonl_power[b] += p[b] / 24.0;
    }
  }
  for (double& v : res.nonlinear_ti) v = std::sqrt(v);

  res.lti_raw = r_mean;
  for (double& v : res.lti_raw) v *= inv_scale;
  for (std::size_t m = 0; m < 3; ++m) {
    res.lti_per_sequence[m] = r[m];
    for (double& v : res.lti_per_sequence[m]) v *= inv_scale;
  }
  res.random_tv = r[3];
  for (double& v : res.random_tv) v *= inv_scale;

  RealFft fft(n_o);
  std::vector<std::complex<double>> spec(fft.bins());
  fft.forward(res.lti_raw, spec);
  res.lti_smoothed_spectrum = band_mean_power(spec, res.bands);
  const auto rntv_power = band_mean_power(res.random_tv, n_o, res.bands);

  auto bg = background_band_power(pre_silence, set.fs, n_o, res.bands, res.omega.size());
  res.background_valid = bg.has_value();
  if (bg) {
    res.background = *bg;
    for (double& v : res.background) v *= inv_scale2;
  }

  res.reference_power = *std::max_element(res.lti_smoothed_spectrum.begin(), res.lti_smoothed_spectrum.end());
  const double ref = res.reference_power;
  const double bin_hz = set.fs / static_cast<double>(n_o);
  auto& lv = res.levels;
  for (std::size_t b = 0; b < nb; ++b) {
    const auto& band = res.bands[b];
    const auto bin = std::min(spec.size() - 1,
                              static_cast<std::size_t>(std::lround(band.center_hz / bin_hz)));
    lv.freq_hz.push_back(band.center_hz);
    lv.lti_l_db.push_back(relative_db(std::norm(spec[bin]), ref));
    lv.lti_s_db.push_back(relative_db(res.lti_smoothed_spectrum[b], ref));
    lv.nonl_ti_db.push_back(relative_db(nonl_power[b], ref));
    lv.rntv_db.push_back(relative_db(rntv_power[b], ref));
    if (res.background_valid) {
      lv.rntv_corrected_db.push_back(relative_db(rntv_power[b] - res.background[b], ref));
      lv.pre_bg_db.push_back(relative_db(res.background[b], ref));
    } else {
      lv.rntv_corrected_db.push_back(lv.rntv_db.back());
      lv.pre_bg_db.push_back(std::numeric_limits<double>::quiet_NaN());
    }
  }
  res.nonl_ti_level_db = relative_db(mean(nonl_power), ref);
  res.rntv_level_db = relative_db(mean(rntv_power), ref);
  res.pre_bg_level_db = res.background_valid ? relative_db(mean(res.background), ref)
                                             : std::numeric_limits<double>::quiet_NaN();
  return res;
}

}  // namespace capricep
