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

#include "capricep/shape.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "capricep/error.hpp"
#include "capricep/rng.hpp"

using namespace capricep;

namespace {

DesignParams small_params() {
  DesignParams p;
  p.fs = 8000.0;
  p.seed = 2024;
  return p;
}

}  // namespace

TEST(Wasserstein, IdenticalProfilesAreZero) {
  const std::vector<double> a{0.0, 1.0, 3.0, 2.0, 0.5};
  EXPECT_EQ(wasserstein_distance(a, a, 100.0), 0.0);
  std::vector<double> scaled = a;
  for (double& v : scaled) v *= 7.0;
  EXPECT_NEAR(wasserstein_distance(a, scaled, 100.0), 0.0, 1e-15);
}

TEST(Wasserstein, PointMassesAreTheirSeparation) {
  std::vector<double> a(64, 0.0), b(64, 0.0);
  a[10] = 1.0;
  b[27] = 1.0;
  EXPECT_NEAR(wasserstein_distance(a, b, 1000.0), 17.0 / 1000.0, 1e-15);
}

TEST(Wasserstein, ShiftedRectanglesAreTheirShift) {
  std::vector<double> a(200, 0.0), b(200, 0.0);
  for (int i = 40; i < 90; ++i) a[i] = 1.0;
  for (int i = 53; i < 103; ++i) b[i] = 1.0;
  EXPECT_NEAR(wasserstein_distance(a, b, 50.0), 13.0 / 50.0, 1e-12);
}

TEST(Wasserstein, MetricAxioms) {
  std::vector<double> a(32), b(32), c(32);
  for (int i = 0; i < 32; ++i) {
    a[i] = 1.0 + std::sin(0.3 * i);
    b[i] = 1.0 + std::cos(0.7 * i);
    c[i] = static_cast<double>(i % 5);
  }
  const double ab = wasserstein_distance(a, b, 1.0);
  EXPECT_DOUBLE_EQ(ab, wasserstein_distance(b, a, 1.0));
  EXPECT_LE(wasserstein_distance(a, c, 1.0), ab + wasserstein_distance(b, c, 1.0) + 1e-12);
}

TEST(Wasserstein, RejectsZeroMass) {
  const std::vector<double> z(8, 0.0), a(8, 1.0);
  try {
    wasserstein_distance(z, a, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroMass);
  }
}

TEST(Target, RectangleMassAndSupport) {
  const auto t = make_target(ShapeKind::kRectangular, 0.01, 1000.0, 101, 50);
  double mass = 0.0;
  for (double v : t.profile) mass += v;
  EXPECT_NEAR(mass, 1.0, 1e-12);
  EXPECT_NEAR(t.profile[50], 0.1, 1e-12);
  EXPECT_EQ(t.profile[44], 0.0);
  EXPECT_NEAR(t.profile[45], 0.05, 1e-12);  // half-covered edge
}

TEST(Target, RaisedCosinePeaksAtCentre) {
  const auto t = make_target(ShapeKind::kRaisedCosine, 0.002, 44100.0, 201, 100);
  for (std::size_t i = 0; i < t.profile.size(); ++i) EXPECT_LE(t.profile[i], t.profile[100]);
  EXPECT_EQ(t.profile[0], 0.0);
  EXPECT_NEAR(t.profile[90], t.profile[110], 1e-15);
}

TEST(EnsembleVariance, IdenticalMembersGiveZero) {
  const std::vector<std::vector<double>> r(5, std::vector<double>{0.1, -0.4, 2.0});
  const auto v = ensemble_variance(r, 1.0, 1);
  for (double x : v.variance) EXPECT_EQ(x, 0.0);
}

TEST(EnsembleVariance, MatchesTwoPassFormula) {
  std::vector<std::vector<double>> r;
  for (int i = 0; i < 7; ++i) r.push_back({std::sin(i * 1.0), std::cos(i * 0.37), static_cast<double>(i)});
  const auto v = ensemble_variance(r, 1.0, 0);
  for (std::size_t k = 0; k < 3; ++k) {
    double mean = 0.0;
    for (const auto& x : r) mean += x[k];
    mean /= 7.0;
    double ss = 0.0;
    for (const auto& x : r) ss += (x[k] - mean) * (x[k] - mean);
    EXPECT_NEAR(v.variance[k], ss / 6.0, 1e-14);
  }
}

TEST(EnsembleVariance, BlockMergeMatchesSerialAccumulation) {
  DesignParams p = small_params();
  const double t = nominal_t_erd(p);
  const auto merged = ensemble_variance(p, t, 40);
  std::vector<std::vector<double>> members;
  for (std::size_t i = 0; i < 40; ++i) {
    DesignParams q = p;
    q.seed = derive_seed(p.seed, i);
    members.push_back(generate_unit(q, t).samples);
  }
  const auto serial = ensemble_variance(members, p.fs, merged.center_index);
  for (std::size_t k = 0; k < serial.variance.size(); ++k) {
    EXPECT_NEAR(merged.variance[k], serial.variance[k], 1e-15);
  }
}

TEST(EnsembleVariance, SumsToAboutOne) {
  const auto v = ensemble_variance(small_params(), nominal_t_erd(small_params()), 200);
  double sum = 0.0;
  for (double x : v.variance) sum += x;
  EXPECT_NEAR(sum, 1.0, 0.05);
}

TEST(TerdSearch, GridEndpoints) {
  const auto g = terd_grid(40.0);
  ASSERT_EQ(g.size(), 31u);
  EXPECT_DOUBLE_EQ(g.front(), 1.0 / 40.0);
  EXPECT_NEAR(g.back(), 2.5 / 40.0, 1e-15);
  EXPECT_EQ(terd_grid(40.0, 1.7, 1.7).size(), 1u);
}

TEST(TerdSearch, SingleCandidateIsReturned) {
  const auto v = ensemble_variance(small_params(), 0.05, 16);
  const std::vector<double> grid{0.04};
  EXPECT_EQ(optimize_terd(v, grid).best_t_erd_s, 0.04);
}

TEST(TerdSearch, RecoversRectangleWidth) {
  EnsembleVariance v;
  v.fs = 1000.0;
  v.center_index = 100;
  v.variance.assign(201, 0.0);
  for (int i = 80; i < 120; ++i) v.variance[i] = 1.0;
  const auto grid = terd_grid(1.0, 0.02, 0.06, 0.005);
  EXPECT_NEAR(optimize_terd(v, grid).best_t_erd_s, 0.04, 1e-12);
}

TEST(TerdSearch, OptimumNearNominalDuration) {
  const DesignParams p = small_params();
  const auto r = optimize_terd(p, terd_grid(p.fd), 300);
  EXPECT_GE(r.best_t_erd_s * p.fd, 1.5);
  EXPECT_LE(r.best_t_erd_s * p.fd, 2.0);
}

TEST(CoarseSearch, SingleCellAndOrdering) {
  DesignParams p = small_params();
  const std::vector<double> one{kDefaultCmag};
  const std::vector<double> alpha1{8.0};
  const auto single = coarse_search(one, alpha1, p, 32);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_DOUBLE_EQ(single[0].cost, single[0].wasserstein_s / single[0].best_t_erd_s);

  const std::vector<double> alphas{1.0, 8.0};
  const auto cells = coarse_search(one, alphas, p, 128);
  ASSERT_EQ(cells.size(), 2u);
  EXPECT_EQ(cells.front().alpha, 8.0);
  EXPECT_LE(cells[0].cost, cells[1].cost);
}

TEST(RaisedCosineSearch, InfeasibleCellsSortLast) {
  DesignParams p;
  const std::vector<double> fds{6000.0, 20000.0};
  const std::vector<double> alphas{8.0};
  const auto cells = raised_cosine_search(fds, alphas, p, raised_cosine_support_s(), 32);
  ASSERT_EQ(cells.size(), 2u);
  EXPECT_EQ(cells[0].fd, 6000.0);
  EXPECT_TRUE(std::isfinite(cells[0].wasserstein_s));
  EXPECT_EQ(cells[1].wasserstein_s, std::numeric_limits<double>::infinity());
}

TEST(CrossCorrelation, PairLayoutAndBounds) {
  std::vector<UnitCapricep> units;
  for (std::uint64_t s = 0; s < 4; ++s) {
    DesignParams p = small_params();
    p.seed = s + 10;
    units.push_back(generate_unit(p));
  }
  units.push_back(units[1]);
  const auto xc = pairwise_max_cross_correlation(units);
  ASSERT_EQ(xc.size(), 10u);
  // Row 0 holds four pairs, so (1, 4) lands at offset 6.
  EXPECT_NEAR(xc[6], 1.0, 1e-12);
  for (std::size_t i = 0; i < xc.size(); ++i) {
    if (i != 6) EXPECT_LT(xc[i], 0.5);
  }
}

TEST(Median, OddAndEven) {
  EXPECT_EQ(median({3.0, 1.0, 2.0}), 2.0);
  EXPECT_EQ(median({4.0, 1.0, 3.0, 2.0}), 2.5);
  EXPECT_THROW(median({}), Error);
}
