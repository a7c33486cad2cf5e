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

#ifndef CAPRICEP_SIMULATOR_HPP_
#define CAPRICEP_SIMULATOR_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace capricep {

struct GainDrift {
  double period_s = 1.0;
  double depth = 0.0;  // in [0, 0.5)
};

struct VirtualSystem {
  std::vector<double> lti_ir{1.0};
  std::vector<double> nl_coeffs{1.0};  // y = sum_p c_p x^p, c_1 first
  std::optional<double> noise_level_db;  // dB re unit RMS; none = noiseless
  std::optional<GainDrift> drift;
  std::size_t latency_samples = 0;
  std::uint64_t noise_seed = 1;
  double sample_rate_hz = 44100.0;
  double pre_silence_s = 1.0;
};

void validate(const VirtualSystem& system);

struct SimulationOutput {
  std::vector<double> output;       // input length + latency + IR length - 1
  std::vector<double> pre_silence;  // noise only
};

/// Throws kOverflow if the nonlinearity drives any sample beyond |y| > 10.
SimulationOutput run(const VirtualSystem& system, std::span<const double> input);

}  // namespace capricep

#endif  // CAPRICEP_SIMULATOR_HPP_
