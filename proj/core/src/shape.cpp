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

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "capricep/error.hpp"
#include "capricep/fft.hpp"
#include "capricep/rng.hpp"
#include "capricep/signal.hpp"

namespace capricep {
namespace {

constexpr std::size_t kEnsembleBlock = 16;

struct Moments {
  std::size_t count = 0;
  std::vector<double> mean;
  std::vector<double> m2;

  void add(std::span<const double> x) {
    if (mean.empty()) {
      mean.assign(x.size(), 0.0);
      m2.assign(x.size(), 0.0);
    }
    ++count;
    const double inv = 1.0 / static_cast<double>(count);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = x[i] - mean[i];
      mean[i] += d * inv;
      m2[i] += d * (x[i] - mean[i]);
    }
  }

  // Chan et al. pairwise combination; order of merges fixes the rounding.
  void merge(const Moments& other) {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    const double na = static_cast<double>(count);
    const double nb = static_cast<double>(other.count);
    const double n = na + nb;
    for (std::size_t i = 0; i < mean.size(); ++i) {
      const double d = other.mean[i] - mean[i];
      mean[i] += d * nb / n;
      m2[i] += other.m2[i] + d * d * na * nb / n;
    }
    count += other.count;
  }
};

EnsembleVariance finish(const Moments& m, double fs, std::size_t center_index) {
  EnsembleVariance out;
  out.ensemble_size = m.count;
  out.fs = fs;
  out.center_index = center_index;
  out.mean = m.mean;
  out.variance.resize(m.m2.size());
  const double denom = m.count > 1 ? static_cast<double>(m.count - 1) : 1.0;
  for (std::size_t i = 0; i < m.m2.size(); ++i) out.variance[i] = std::max(0.0, m.m2[i] / denom);
  return out;
}

DesignParams with_seed(DesignParams p, std::size_t index) {
  p.seed = derive_seed(p.seed, index);
  return p;
}

}  // namespace

ShapeTarget make_target(ShapeKind kind, double duration_s, double fs, std::size_t length,
                        std::size_t center_index) {
  if (!(duration_s > 0.0) || !(fs > 0.0) || center_index >= length) {
    throw Error(ErrorCode::kInvalidArgument, "make_target: bad duration, rate or grid");
  }
  ShapeTarget t{kind, duration_s, std::vector<double>(length, 0.0), fs, center_index};
  const double width = duration_s * fs;
  for (std::size_t n = 0; n < length; ++n) {
    const double x = static_cast<double>(n) - static_cast<double>(center_index);
    if (kind == ShapeKind::kRectangular) {
      const double half = width / 2.0;
      t.profile[n] = std::max(0.0, std::min(x + 0.5, half) - std::max(x - 0.5, -half));
    } else if (std::abs(x) < width / 2.0) {
      t.profile[n] = 0.5 * (1.0 + std::cos(2.0 * std::numbers::pi * x / width));
    }
  }
  if (t.profile[center_index] == 0.0) t.profile[center_index] = 1.0;
  double mass = 0.0;
  for (double v : t.profile) mass += v;
  for (double& v : t.profile) v /= mass;
  return t;
}

EnsembleVariance ensemble_variance(std::span<const std::vector<double>> responses, double fs,
                                   std::size_t center_index) {
  if (responses.empty()) throw Error(ErrorCode::kInvalidArgument, "empty ensemble");
  Moments m;
  for (const auto& r : responses) {
    if (r.size() != responses.front().size()) {
      throw Error(ErrorCode::kLengthMismatch, "ensemble members differ in length");
    }
    m.add(r);
  }
  return finish(m, fs, center_index);
}

EnsembleVariance ensemble_variance(const DesignParams& params, double t_erd_s, std::size_t n_units) {
  if (n_units < 2) throw Error(ErrorCode::kInvalidArgument, "ensemble needs at least two units");
  const std::size_t blocks = (n_units + kEnsembleBlock - 1) / kEnsembleBlock;
  std::vector<Moments> partial(blocks);
  std::vector<std::size_t> centers(blocks, 0);
  parallel_for(blocks, [&](std::size_t b) {
    const std::size_t end = std::min(n_units, (b + 1) * kEnsembleBlock);
    for (std::size_t i = b * kEnsembleBlock; i < end; ++i) {
      const auto unit = generate_unit(with_seed(params, i), t_erd_s);
      centers[b] = unit.center_index;
      partial[b].add(unit.samples);
    }
  });
  Moments total;
  for (const auto& p : partial) total.merge(p);
  return finish(total, params.fs, centers.front());
}

double wasserstein_distance(std::span<const double> a, std::span<const double> b, double fs) {
  if (a.size() != b.size()) throw Error(ErrorCode::kLengthMismatch, "profiles differ in length");
  double mass_a = 0.0, mass_b = 0.0;
  for (double v : a) mass_a += v;
  for (double v : b) mass_b += v;
  if (!(mass_a > 0.0) || !(mass_b > 0.0)) {
    throw Error(ErrorCode::kZeroMass, "Wasserstein distance needs positive mass on both sides");
  }
  double ca = 0.0, cb = 0.0, acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ca += a[i] / mass_a;
    cb += b[i] / mass_b;
    acc += std::abs(ca - cb);
  }
  return acc / fs;
}

double wasserstein_distance(const EnsembleVariance& v, const ShapeTarget& target) {
  if (v.center_index != target.center_index) {
    throw Error(ErrorCode::kInvalidArgument, "variance and target are centered differently");
  }
  return wasserstein_distance(v.variance, target.profile, v.fs);
}

std::vector<double> terd_grid(double fd, double lo, double hi, double step) {
  if (!(fd > 0.0) || !(step > 0.0) || hi < lo) throw Error(ErrorCode::kInvalidArgument, "bad T_ERD grid");
  std::vector<double> grid;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  for (std::size_t i = 0; i < count; ++i) grid.push_back((lo + step * static_cast<double>(i)) / fd);
  return grid;
}

TerdSearchResult optimize_terd(const EnsembleVariance& v, std::span<const double> grid_s) {
  if (grid_s.empty()) throw Error(ErrorCode::kInvalidArgument, "empty T_ERD grid");
  TerdSearchResult out;
  out.grid_s.assign(grid_s.begin(), grid_s.end());
  double best = std::numeric_limits<double>::infinity();
  for (double t : grid_s) {
    const auto target =
        make_target(ShapeKind::kRectangular, t, v.fs, v.variance.size(), v.center_index);
    const double d = wasserstein_distance(v, target);
    out.distances_s.push_back(d);
    if (d < best || (d == best && t < out.best_t_erd_s)) {
      best = d;
      out.best_t_erd_s = t;
    }
  }
  return out;
}

TerdSearchResult optimize_terd(const DesignParams& params, std::span<const double> grid_s,
                               std::size_t n_units) {
  if (grid_s.empty()) throw Error(ErrorCode::kInvalidArgument, "empty T_ERD grid");
  const double longest = *std::max_element(grid_s.begin(), grid_s.end());
  return optimize_terd(ensemble_variance(params, longest, n_units), grid_s);
}

std::vector<CoarseCell> coarse_search(std::span<const double> cmag_grid,
                                      std::span<const double> alpha_grid,
                                      const DesignParams& params, std::size_t n_units) {
  std::vector<CoarseCell> cells;
  const auto grid = terd_grid(params.fd);
  for (double cmag : cmag_grid) {
    for (double alpha : alpha_grid) {
      DesignParams p = params;
      p.cmag = cmag;
      p.alpha = alpha;
      p.beta = alpha;
      const auto r = optimize_terd(p, grid, n_units);
      const auto it = std::find(r.grid_s.begin(), r.grid_s.end(), r.best_t_erd_s);
      const double w = r.distances_s[static_cast<std::size_t>(it - r.grid_s.begin())];
      cells.push_back({cmag, alpha, r.best_t_erd_s, w, w / r.best_t_erd_s});
    }
  }
  std::stable_sort(cells.begin(), cells.end(),
                   [](const CoarseCell& a, const CoarseCell& b) { return a.cost < b.cost; });
  return cells;
}

std::vector<ShortDesignCell> raised_cosine_search(std::span<const double> fd_grid,
                                                  std::span<const double> alpha_grid,
                                                  const DesignParams& base, double support_s,
                                                  std::size_t n_units) {
  std::vector<ShortDesignCell> cells;
  for (double fd : fd_grid) {
    for (double alpha : alpha_grid) {
      DesignParams p = base;
      p.fd = fd;
      p.alpha = alpha;
      p.beta = alpha;
      double w = std::numeric_limits<double>::infinity();
      try {
        const auto v = ensemble_variance(p, support_s, n_units);
        const auto target = make_target(ShapeKind::kRaisedCosine, support_s, p.fs,
                                         v.variance.size(), v.center_index);
        w = wasserstein_distance(v, target);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kTooFewSections && e.code() != ErrorCode::kTruncationLoss) throw;
      }
      cells.push_back({fd, alpha, w});
    }
  }
  std::stable_sort(cells.begin(), cells.end(), [](const ShortDesignCell& a, const ShortDesignCell& b) {
    return a.wasserstein_s < b.wasserstein_s;
  });
  return cells;
}

std::vector<double> pairwise_max_cross_correlation(std::span<const UnitCapricep> units) {
  const std::size_t count = units.size();
  if (count < 2) return {};
  std::size_t longest = 0;
  for (const auto& u : units) longest = std::max(longest, u.samples.size());
  const std::size_t n = next_pow2(2 * longest - 1);

  std::vector<std::vector<std::complex<double>>> spectra(count);
  std::vector<double> norms(count);
  parallel_for(count, [&](std::size_t i) {
    RealFft fft(n);
    spectra[i].resize(fft.bins());
    fft.forward(units[i].samples, spectra[i]);
    norms[i] = std::sqrt(energy(units[i].samples));
  });

  // Row i holds pairs (i, j > i); row offsets follow the triangular layout.
  std::vector<double> out(count * (count - 1) / 2);
  parallel_for(count - 1, [&](std::size_t i) {
    RealFft fft(n);
    std::vector<std::complex<double>> prod(fft.bins());
    std::vector<double> xc(n);
    std::size_t offset = i * (2 * count - i - 1) / 2;
    for (std::size_t j = i + 1; j < count; ++j) {
      for (std::size_t k = 0; k < prod.size(); ++k) prod[k] = std::conj(spectra[i][k]) * spectra[j][k];
      fft.inverse(prod, xc);
      const double denom = static_cast<double>(n) * norms[i] * norms[j];
      out[offset++] = denom > 0.0 ? max_abs(xc) / denom : 0.0;
    }
  });
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorCode::kEmptyInput, "median of empty set");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace capricep
