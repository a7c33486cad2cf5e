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

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "capricep/error.hpp"
#include "oracles.hpp"

using namespace capricep;

TEST(Simulator, IdentityWithLatency) {
  VirtualSystem s;
  s.latency_samples = 4;
  const std::vector<double> x{0.1, -0.2, 0.3};
  const auto out = run(s, x);
  ASSERT_EQ(out.output.size(), 7u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(out.output[i], 0.0);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(out.output[4 + i], x[i]);
  EXPECT_EQ(out.pre_silence.size(), 44100u);
  for (double v : out.pre_silence) EXPECT_EQ(v, 0.0);
}

TEST(Simulator, FirMatchesConvolution) {
  VirtualSystem s;
  s.lti_ir = {0.5, 0.25, -0.125};
  const auto x = oracle::white_noise(100, 0.3, 1);
  const auto out = run(s, x);
  const auto expected = oracle::convolve(x, s.lti_ir);
  ASSERT_EQ(out.output.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(out.output[i], expected[i], 1e-15);
}

TEST(Simulator, CubicHarmonicBalance) {
  const std::size_t n = 4096;
  const std::size_t k0 = 64;
  const double a = 0.5, c3 = 0.1;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = a * std::cos(2.0 * std::numbers::pi * static_cast<double>(k0 * i) / static_cast<double>(n));
  }
  VirtualSystem s;
  s.nl_coeffs = {1.0, 0.0, c3};
  const auto out = run(s, x);
  const auto spec = oracle::dft(out.output, n, 3 * k0 + 1);
  const double scale = 2.0 / static_cast<double>(n);
  EXPECT_NEAR(std::abs(spec[k0]) * scale, a + 0.75 * c3 * a * a * a, 0.01 * (a + 0.75 * c3 * a * a * a));
  EXPECT_NEAR(std::abs(spec[3 * k0]) * scale, 0.25 * c3 * a * a * a, 0.01 * 0.25 * c3 * a * a * a);
  EXPECT_NEAR(std::abs(spec[2 * k0]) * scale, 0.0, 1e-12);
}

TEST(Simulator, NoiseLevel) {
  VirtualSystem s;
  s.noise_level_db = -40.0;
  const std::vector<double> x(20000, 0.0);
  const auto out = run(s, x);
  for (const auto* seg : {&out.output, &out.pre_silence}) {
    double p = 0.0;
    for (double v : *seg) p += v * v;
    const double r = std::sqrt(p / static_cast<double>(seg->size()));
    EXPECT_NEAR(r, 0.01, 0.05 * 0.01);
  }
}

TEST(Simulator, DeterministicPerSeed) {
  VirtualSystem s;
  s.noise_level_db = -60.0;
  const std::vector<double> x(1000, 0.1);
  const auto a = run(s, x), b = run(s, x);
  EXPECT_EQ(a.output, b.output);
  EXPECT_EQ(a.pre_silence, b.pre_silence);
  s.noise_seed = 2;
  EXPECT_NE(run(s, x).output, a.output);
}

TEST(Simulator, GainDriftModulates) {
  VirtualSystem s;
  s.sample_rate_hz = 1000.0;
  s.drift = GainDrift{1.0, 0.2};
  const std::vector<double> x(1000, 1.0);
  const auto out = run(s, x);
  EXPECT_NEAR(out.output[250], 1.2, 1e-12);
  EXPECT_NEAR(out.output[750], 0.8, 1e-12);
}

TEST(Simulator, OverflowAndValidation) {
  VirtualSystem s;
  s.nl_coeffs = {1.0, 0.0, 100.0};
  try {
    run(s, std::vector<double>{0.1, 0.5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOverflow);
  }
  VirtualSystem bad;
  bad.drift = GainDrift{1.0, 0.5};
  EXPECT_THROW(validate(bad), Error);
  bad = VirtualSystem{};
  bad.pre_silence_s = 0.5;
  EXPECT_THROW(validate(bad), Error);
  bad = VirtualSystem{};
  bad.lti_ir = {0.0};
  EXPECT_THROW(validate(bad), Error);
}
