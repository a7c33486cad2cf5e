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

#include "capricep/sequence.hpp"

#include <string>

#include "capricep/error.hpp"
#include "capricep/rng.hpp"
#include "capricep/signal.hpp"

namespace capricep {

std::vector<double> build_sequence(std::span<const double> unit, const WeightRow& row,
                                   std::size_t n_o, std::size_t n_repeats) {
  if (n_o < 1) throw Error(ErrorCode::kInvalidArgument, "n_o must be at least 1");
  if (n_repeats < 1) throw Error(ErrorCode::kInvalidArgument, "n_repeats must be at least 1");
  if (unit.empty()) throw Error(ErrorCode::kEmptyInput, "empty unit");
  const std::size_t overlap = (unit.size() + n_o - 1) / n_o;
  if (overlap > kMaxOverlap) {
    throw Error(ErrorCode::kSequenceOverlap,
                std::to_string(overlap) + " copies overlap; increase n_o above " +
                    std::to_string((unit.size() + kMaxOverlap - 1) / kMaxOverlap - 1));
  }
  std::vector<double> out(n_o * n_repeats + unit.size() - 1, 0.0);
  for (std::size_t k = 0; k < n_repeats; ++k) {
    const double w = row[k % 8];
    double* dst = out.data() + k * n_o;
    for (std::size_t i = 0; i < unit.size(); ++i) dst[i] += w * unit[i];
  }
  return out;
}

std::vector<double> SequenceSet::test_signal() const {
  std::vector<double> x(sequences[0].size(), 0.0);
  for (std::size_t m = 0; m < 3; ++m) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += sequences[m][i];
  }
  return x;
}

TestSignal build_test_signal(std::span<const UnitCapricep> units, std::size_t n_o,
                             std::size_t n_repeats) {
  if (units.size() != 4) throw Error(ErrorCode::kInvalidArgument, "need exactly four units");
  if (n_repeats < 8) throw Error(ErrorCode::kInvalidArgument, "n_repeats must cover one 8-cycle");
  for (const auto& u : units) {
    if (u.fs != units[0].fs) {
      throw Error(ErrorCode::kSampleRateMismatch, "units differ in sample rate");
    }
    if (u.samples.size() != units[0].samples.size()) {
      throw Error(ErrorCode::kLengthMismatch, "units differ in length");
    }
  }
  TestSignal out;
  out.set.n_o = n_o;
  out.set.n_repeats = n_repeats;
  out.set.fs = units[0].fs;
  for (std::size_t m = 0; m < 4; ++m) out.set.units[m] = units[m];
  parallel_for(4, [&](std::size_t m) {
    out.set.sequences[m] = build_sequence(units[m].samples, kB4[m], n_o, n_repeats);
  });
  out.signal = out.set.test_signal();
  return out;
}

std::array<UnitCapricep, 4> measurement_units(const DesignParams& params,
                                              std::optional<double> t_erd_s) {
  std::array<UnitCapricep, 4> units;
  for (std::size_t m = 0; m < 4; ++m) {
    DesignParams p = params;
    p.seed = derive_seed(params.seed, m);
    units[m] = t_erd_s ? generate_unit(p, *t_erd_s) : generate_unit(p);
  }
  return units;
}

std::size_t default_n_o(const UnitCapricep& unit) { return unit.samples.size(); }

std::size_t default_n_repeats(std::size_t n_cycles) { return 8 * (n_cycles + 2); }

double normalize_peak(std::vector<double>& x, double peak) {
  const double m = max_abs(x);
  if (m == 0.0) return 1.0;
  const double scale = peak / m;
  for (double& v : x) v *= scale;
  return scale;
}

}  // namespace capricep
