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

#include "capricep/simulator.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "capricep/error.hpp"
#include "capricep/rng.hpp"
#include "capricep/signal.hpp"

namespace capricep {
namespace {

constexpr double kOverflowLimit = 10.0;

double polynomial(std::span<const double> c, double x) {
  double acc = 0.0;
  for (std::size_t p = c.size(); p-- > 0;) acc = (acc + c[p]) * x;
  return acc;
}

}  // namespace

void validate(const VirtualSystem& s) {
  if (s.lti_ir.empty()) throw Error(ErrorCode::kInvalidArgument, "empty impulse response");
  for (double v : s.lti_ir) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kInvalidArgument, "impulse response is not finite");
  }
  if (energy(s.lti_ir) == 0.0) throw Error(ErrorCode::kInvalidArgument, "impulse response has no energy");
  if (s.nl_coeffs.empty()) throw Error(ErrorCode::kInvalidArgument, "no polynomial coefficients");
  if (s.drift && (s.drift->depth < 0.0 || s.drift->depth >= 0.5 || !(s.drift->period_s > 0.0))) {
    throw Error(ErrorCode::kInvalidArgument, "drift depth must be in [0, 0.5) with a positive period");
  }
  if (!(s.sample_rate_hz > 0.0)) throw Error(ErrorCode::kInvalidArgument, "sample rate must be positive");
  if (s.pre_silence_s < 1.0) throw Error(ErrorCode::kInvalidArgument, "pre-silence must be at least 1 s");
}

SimulationOutput run(const VirtualSystem& s, std::span<const double> input) {
  validate(s);
  SimulationOutput out;
  const auto filtered = convolve(input, s.lti_ir);
  out.output.assign(s.latency_samples + filtered.size(), 0.0);
  for (std::size_t n = 0; n < filtered.size(); ++n) {
    double y = polynomial(s.nl_coeffs, filtered[n]);
    if (s.drift) {
      const double t = static_cast<double>(n) / s.sample_rate_hz;
      y *= 1.0 + s.drift->depth * std::sin(2.0 * std::numbers::pi * t / s.drift->period_s);
    }
    if (!(std::abs(y) <= kOverflowLimit)) {
      throw Error(ErrorCode::kOverflow,
                  "nonlinearity output exceeds 10 at sample " + std::to_string(n));
    }
    out.output[s.latency_samples + n] = y;
  }
  out.pre_silence.assign(static_cast<std::size_t>(std::ceil(s.pre_silence_s * s.sample_rate_hz)), 0.0);
  if (s.noise_level_db) {
    const double sigma = std::pow(10.0, *s.noise_level_db / 20.0);
    Engine engine(s.noise_seed);
    std::normal_distribution<double> normal(0.0, sigma);
    for (double& v : out.pre_silence) v = normal(engine);
    for (double& v : out.output) v += normal(engine);
  }
  return out;
}

}  // namespace capricep
