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

#ifndef CAPRICEP_SEQUENCE_HPP_
#define CAPRICEP_SEQUENCE_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "capricep/design.hpp"

namespace capricep {

using WeightRow = std::array<int, 8>;
using WeightMatrix = std::array<WeightRow, 4>;

// Rows are the polarity patterns of the four sequences over one 8-cycle.
inline constexpr WeightMatrix kB4 = {{
    {1, 1, 1, 1, 1, 1, 1, 1},
    {1, -1, 1, -1, 1, -1, 1, -1},
    {1, 1, -1, -1, 1, 1, -1, -1},
    {1, 1, 1, 1, -1, -1, -1, -1},
}};

/// Largest number of shifted copies allowed to overlap at one sample.
inline constexpr std::size_t kMaxOverlap = 16;

/// Periodic overlap-add: copy k of the unit starts at k * n_o, weighted by
/// row[k mod 8]. Output length n_o * n_repeats + unit length - 1.
std::vector<double> build_sequence(std::span<const double> unit, const WeightRow& row,
                                   std::size_t n_o, std::size_t n_repeats);

struct SequenceSet {
  std::array<std::vector<double>, 4> sequences;
  std::size_t n_o = 0;
  std::size_t n_repeats = 0;
  std::array<UnitCapricep, 4> units;
  double fs = 0.0;

  std::size_t unit_length() const noexcept { return units[0].samples.size(); }
  std::size_t sequence_length() const noexcept { return sequences[0].size(); }
  /// Sum of the first three sequences.
  std::vector<double> test_signal() const;
};

struct TestSignal {
  std::vector<double> signal;
  SequenceSet set;
};

/// Units must share fs and length; n_repeats >= 8. The fourth sequence is built but left out
/// of the test signal.
TestSignal build_test_signal(std::span<const UnitCapricep> units, std::size_t n_o,
                             std::size_t n_repeats);

/// Four units drawn with seeds derive_seed(params.seed, m), m = 0..3.
std::array<UnitCapricep, 4> measurement_units(const DesignParams& params,
                                              std::optional<double> t_erd_s = std::nullopt);

/// One unit per period: the truncated unit length.
std::size_t default_n_o(const UnitCapricep& unit);

/// One warm-up and one cool-down 8-cycle around n_cycles usable cycles.
std::size_t default_n_repeats(std::size_t n_cycles);

/// Scales x in place to the given peak magnitude and returns the factor.
double normalize_peak(std::vector<double>& x, double peak = 0.5);

}  // namespace capricep

#endif  // CAPRICEP_SEQUENCE_HPP_
