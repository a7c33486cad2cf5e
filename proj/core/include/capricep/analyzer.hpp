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

#ifndef CAPRICEP_ANALYZER_HPP_
#define CAPRICEP_ANALYZER_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "capricep/bands.hpp"
#include "capricep/design.hpp"
#include "capricep/sequence.hpp"

namespace capricep {

struct CompressedSignals {
  std::array<std::vector<double>, 4> q;
  std::int64_t n_ini = 0;  // start of the first analysis window; may be negative
};

/// q[m][n] = sum_j recorded[n + j] * unit_m[j], same length as the recording.
/// Throws kRecordingTooShort when the recording is shorter than 8 * n_o.
CompressedSignals compress(std::span<const double> recorded, std::span<const UnitCapricep> units,
                           std::size_t n_o);

/// r[m][n] = (1/8) sum_k q[m][n + k n_o] * weights[m][k]; length q.size() - 7 n_o.
std::array<std::vector<double>, 4> orthogonalize(const CompressedSignals& q,
                                                 const WeightMatrix& weights, std::size_t n_o);

/// Mean of r_itr[n_ini + 8 c n_o + t], t < n_o, over the cycles c in omega.
std::vector<double> synchronous_average(std::span<const double> r_itr, std::int64_t n_ini,
                                        std::size_t n_o, std::span<const std::size_t> omega);

struct Alignment {
  std::int64_t first_pulse = 0;  // sample of the copy-0 pulse in q
  std::int64_t n_ini = 0;        // first_pulse - pre_roll
};

/// Pulse phase from |q1|^2 folded modulo n_o, copy index modulo 4 from the
/// polarity patterns of q2 and q3, then the earliest strong pulse of that class.
Alignment find_alignment(const CompressedSignals& q, std::size_t n_o, std::size_t pre_roll);

/// Cycles 1 .. n_repeats/8 - 2 whose windows fit into r_itr_length samples.
std::vector<std::size_t> clean_cycles(std::int64_t n_ini, std::size_t n_o, std::size_t n_repeats,
                                      std::size_t r_itr_length);

struct AnalysisOptions {
  double input_scale = 1.0;            // gain applied to the test signal before playback
  std::optional<std::size_t> pre_roll;  // default n_o / 8
};

struct BandLevels {
  std::vector<double> freq_hz;
  std::vector<double> lti_l_db;
  std::vector<double> lti_s_db;
  std::vector<double> nonl_ti_db;
  std::vector<double> rntv_db;            // raw
  std::vector<double> rntv_corrected_db;  // pre-BG subtracted in power
  std::vector<double> pre_bg_db;          // NaN when the silence was unusable
};

struct DecompositionResult {
  double fs = 0.0;
  std::size_t n_o = 0;
  std::size_t pre_roll = 0;
  Alignment alignment;
  std::vector<std::size_t> omega;

  std::vector<double> lti_raw;                 // r_R / input_scale, length n_o
  std::array<std::vector<double>, 3> lti_per_sequence;
  std::vector<double> lti_smoothed_spectrum;   // band powers
  std::vector<double> nonlinear_ti;            // RMS over polarity combinations
  std::vector<double> random_tv;               // averaged 4th channel / input_scale
  std::vector<double> background;              // band powers, empty if invalid
  bool background_valid = false;

  std::vector<Band> bands;
  double reference_power = 0.0;  // LTI-S peak band power, the 0 dB level
  BandLevels levels;
  double nonl_ti_level_db = 0.0;  // band-averaged power re reference
  double rntv_level_db = 0.0;
  double pre_bg_level_db = 0.0;
};

DecompositionResult decompose(std::span<const double> recorded, std::span<const double> pre_silence,
                              const SequenceSet& set, const AnalysisOptions& options = {});

/// Band powers of a noise segment scaled to what one channel of the averaged
/// response would carry: n_o-point spectrum, divided by 8 * n_cycles.
/// Returns nullopt when the segment is shorter than one second or clipped.
std::optional<std::vector<double>> background_band_power(std::span<const double> silence, double fs,
                                                         std::size_t n_o, std::span<const Band> bands,
                                                         std::size_t n_cycles);

}  // namespace capricep

#endif  // CAPRICEP_ANALYZER_HPP_
