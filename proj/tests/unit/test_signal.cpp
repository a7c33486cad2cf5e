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

#include "capricep/signal.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <vector>

#include "oracles.hpp"

using namespace capricep;

TEST(Signal, ConvolveMatchesDirectSum) {
  for (std::size_t nb : {3u, 64u, 65u, 300u}) {
    const auto a = oracle::white_noise(500, 1.0, 1);
    const auto b = oracle::white_noise(nb, 1.0, 2);
    const auto got = convolve(a, b);
    const auto expected = oracle::convolve(a, b);
    ASSERT_EQ(got.size(), expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], expected[i], 1e-11);
  }
}

TEST(Signal, CorrelateMatchesDirectSum) {
  const auto y = oracle::white_noise(700, 1.0, 3);
  const auto u = oracle::white_noise(90, 1.0, 4);
  const auto got = correlate(y, u);
  const auto expected = oracle::correlate(y, u);
  for (std::size_t i = 0; i < y.size(); ++i) EXPECT_NEAR(got[i], expected[i], 1e-11);
}

TEST(Signal, Moments) {
  const std::vector<double> x{1.0, 2.0, 3.0, 10.0};
  EXPECT_DOUBLE_EQ(energy(x), 114.0);
  EXPECT_DOUBLE_EQ(rms(x), std::sqrt(114.0 / 4.0));
  EXPECT_EQ(max_abs(std::vector<double>{-4.0, 3.0}), 4.0);
  EXPECT_GT(skewness(x), 0.0);
  EXPECT_NEAR(skewness(std::vector<double>{-1.0, 0.0, 1.0}), 0.0, 1e-15);
  EXPECT_EQ(power_db(0.0), -300.0);
  EXPECT_DOUBLE_EQ(power_db(100.0), 20.0);
}

TEST(Signal, NormalizedCrossCorrelation) {
  const auto a = oracle::white_noise(256, 1.0, 5);
  std::vector<double> shifted(300, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) shifted[i + 20] = -3.0 * a[i];
  EXPECT_NEAR(max_normalized_cross_correlation(a, shifted), 1.0, 1e-12);
}

TEST(Signal, ParallelForVisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i].fetch_add(1); });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(10, [](std::size_t i) {
                 if (i == 7) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}
