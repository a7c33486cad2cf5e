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

#ifndef CAPRICEP_SHAPE_HPP_
#define CAPRICEP_SHAPE_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "capricep/design.hpp"

namespace capricep {

enum class ShapeKind { kRectangular, kRaisedCosine };

/// Target envelope W[n] on the unit's sample grid, unit mass.
struct ShapeTarget {
  ShapeKind kind = ShapeKind::kRectangular;
  double duration_s = 0.0;  // rectangle width, or raised-cosine support
  std::vector<double> profile;
  double fs = 0.0;
  std::size_t center_index = 0;
};

/// Rectangles get fractional edge weights, so the mass equals duration * fs
/// before normalization and the target moves continuously with duration.
ShapeTarget make_target(ShapeKind kind, double duration_s, double fs, std::size_t length,
                        std::size_t center_index);

struct EnsembleVariance {
  std::vector<double> variance;  // unbiased, per sample
  std::vector<double> mean;
  std::size_t ensemble_size = 0;
  double fs = 0.0;
  std::size_t center_index = 0;
};

/// Per-sample statistics over equally long, center-aligned responses.
EnsembleVariance ensemble_variance(std::span<const std::vector<double>> responses, double fs,
                                   std::size_t center_index);

/// Unit i of the ensemble uses seed derive_seed(params.seed, i).
EnsembleVariance ensemble_variance(const DesignParams& params, double t_erd_s, std::size_t n_units);

/// Wasserstein-1 distance in seconds between two nonnegative profiles on the
/// same grid after normalizing each to unit mass. Throws Error(kZeroMass).
double wasserstein_distance(std::span<const double> a, std::span<const double> b, double fs);
double wasserstein_distance(const EnsembleVariance& v, const ShapeTarget& target);

/// Durations lo/fd, (lo+step)/fd, ... up to and including hi/fd.
std::vector<double> terd_grid(double fd, double lo = 1.0, double hi = 2.5, double step = 0.05);

struct TerdSearchResult {
  double best_t_erd_s = 0.0;
  std::vector<double> grid_s;
  std::vector<double> distances_s;
};

/// Grid search of the rectangular T_ERD. One ensemble, truncated for the
/// largest grid value, is compared against every candidate; ties go to the
/// shorter duration.
TerdSearchResult optimize_terd(const DesignParams& params, std::span<const double> grid_s,
                               std::size_t n_units);
TerdSearchResult optimize_terd(const EnsembleVariance& v, std::span<const double> grid_s);

struct CoarseCell {
  double cmag = 0.0;
  double alpha = 0.0;
  double best_t_erd_s = 0.0;
  double wasserstein_s = 0.0;
  double cost = 0.0;  // wasserstein_s / best_t_erd_s
};

/// Exhaustive (cmag, alpha) search, beta tied to alpha, T_ERD optimized per
/// cell over terd_grid(params.fd). Rows sorted by ascending cost.
std::vector<CoarseCell> coarse_search(std::span<const double> cmag_grid,
                                      std::span<const double> alpha_grid,
                                      const DesignParams& params, std::size_t n_units);

struct ShortDesignCell {
  double fd = 0.0;
  double alpha = 0.0;
  double wasserstein_s = 0.0;  // +inf when a member had < 2 sections or did not fit the window
};

/// (fd, alpha) search of a short design against a raised-cosine target of
/// the given support. Rows sorted by ascending distance.
std::vector<ShortDesignCell> raised_cosine_search(std::span<const double> fd_grid,
                                                  std::span<const double> alpha_grid,
                                                  const DesignParams& base, double support_s,
                                                  std::size_t n_units);

/// max |normalized cross-correlation| over all lags for every unordered pair
/// (i < j), row-major.
std::vector<double> pairwise_max_cross_correlation(std::span<const UnitCapricep> units);

double median(std::vector<double> values);

}  // namespace capricep

#endif  // CAPRICEP_SHAPE_HPP_
