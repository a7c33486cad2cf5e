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

#ifndef CAPRICEP_DESIGN_HPP_
#define CAPRICEP_DESIGN_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "capricep/allpass.hpp"
#include "capricep/rng.hpp"

namespace capricep {

/// Optimized rectangular T_ERD in units of the nominal duration 1/F_d.
inline constexpr double kTerdRatio = 1.736;
/// Bandwidth coefficient: b_k = cmag * F_d.
inline const double kDefaultCmag = 1.189207115002721;  // 2^(1/4)

struct DesignParams {
  double fs = 44100.0;
  double fd = 40.0;     // mean spacing of center frequencies, Hz
  double alpha = 8.0;   // Beta shape parameters of the spacing distribution
  double beta = 8.0;
  double cmag = kDefaultCmag;
  std::uint64_t seed = 1;
  double truncation_factor = 4.0;  // kept length = truncation_factor * T_ERD

  friend bool operator==(const DesignParams&, const DesignParams&) = default;
};

void validate(const DesignParams& params);

/// kTerdRatio / fd.
double nominal_t_erd(const DesignParams& params);

struct UnitCapricep {
  std::vector<double> samples;
  double fs = 0.0;
  std::size_t center_index = 0;
  double t_erd_s = 0.0;
  DesignParams design;
  std::optional<DesignParams> short_design;  // set for composite units
  std::vector<AllPassSection> sections;
  double truncation_loss = 0.0;  // 1 - kept energy

  /// Each real section carries a conjugate pole pair, i.e. two first-order
  /// complex all-pass filters.
  std::size_t first_order_filter_count() const noexcept { return 2 * sections.size(); }
};

/// Draws r2 in [0, 1]; the default source is Beta(alpha, beta).
using IntervalSource = std::function<double(Engine&)>;

/// Randomized center-frequency assignment. Intervals r2 * F_d / E[r2] are
/// accumulated until the next center would reach fs/2; each section gets an
/// equiprobable time sign and bandwidth cmag * F_d. Deterministic in seed.
/// Throws Error(kTooFewSections) if fewer than two sections fit.
std::vector<AllPassSection> draw_sections(const DesignParams& params);
std::vector<AllPassSection> draw_sections(const DesignParams& params, const IntervalSource& r2);

/// FFT length used for synthesis: smallest power of two holding
/// max(8, 2 * truncation_factor) * T_ERD seconds.
std::size_t synthesis_fft_length(double fs, double t_erd_s, double truncation_factor);

/// Synthesizes the cascade for `sections` and truncates it symmetrically to
/// round(truncation_factor * t_erd_s * fs) samples around the time origin.
/// Throws Error(kTruncationLoss) when more than 1% of the energy is cut.
UnitCapricep unit_from_sections(std::vector<AllPassSection> sections, const DesignParams& params,
                                double t_erd_s);

UnitCapricep generate_unit(const DesignParams& params, double t_erd_s);
/// Uses nominal_t_erd(params).
UnitCapricep generate_unit(const DesignParams& params);

/// Cascades a short unit's sections with a long design; the result is
/// truncated for the long design's nominal T_ERD.
UnitCapricep composite_unit(const DesignParams& short_params, const DesignParams& long_params);
UnitCapricep composite_unit(std::span<const AllPassSection> short_sections,
                            const DesignParams& long_params, double t_erd_s);

/// Short raised-cosine design (0.5 ms support) found by the shape optimizer;
/// see raised_cosine_support_s().
DesignParams raised_cosine_short_preset(double fs, std::uint64_t seed);
double raised_cosine_support_s();

}  // namespace capricep

#endif  // CAPRICEP_DESIGN_HPP_
