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

#include "capricep/design.hpp"

#include <cmath>
#include <string>

#include "capricep/error.hpp"
#include "capricep/fft.hpp"
#include "capricep/signal.hpp"

namespace capricep {
namespace {

constexpr double kMaxTruncationLoss = 0.01;

// Raised-cosine short unit, from `capricep optimize --shape raised-cosine`.
constexpr double kRaisedCosineSupport = 0.0005;
constexpr double kRaisedCosineFd = 6000.0;
constexpr double kRaisedCosineAlpha = 8.0;

}  // namespace

void validate(const DesignParams& p) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::kInvalidArgument, what); };
  if (!(p.fs > 0.0)) fail("fs must be positive");
  if (!(p.fd > 0.0) || !(p.fd < p.fs / 2.0)) fail("fd must lie in (0, fs/2)");
  if (!(p.alpha > 0.0) || !(p.beta > 0.0)) fail("alpha and beta must be positive");
  if (!(p.cmag > 0.0)) fail("cmag must be positive");
  if (!(p.truncation_factor > 0.0)) fail("truncation_factor must be positive");
}

double nominal_t_erd(const DesignParams& params) { return kTerdRatio / params.fd; }

std::vector<AllPassSection> draw_sections(const DesignParams& params) {
  return draw_sections(params, [&params](Engine& e) { return draw_beta(e, params.alpha, params.beta); });
}

std::vector<AllPassSection> draw_sections(const DesignParams& params, const IntervalSource& r2) {
  validate(params);
  Engine engine(params.seed);
  const double mean_r2 = params.alpha / (params.alpha + params.beta);
  const double scale = params.fd / mean_r2;
  const double nyquist = params.fs / 2.0;
  const double bandwidth = params.cmag * params.fd;

  std::vector<AllPassSection> sections;
  double f = 0.0;
  for (;;) {
    const double v = r2(engine);
    if (!(v > 0.0) || v > 1.0) {
      throw Error(ErrorCode::kInvalidArgument, "interval draw outside (0, 1]: " + std::to_string(v));
    }
    f += v * scale;
    if (f >= nyquist) break;
    sections.push_back({f, bandwidth, draw_sign(engine)});
  }
  if (sections.size() < 2) {
    throw Error(ErrorCode::kTooFewSections,
                "only " + std::to_string(sections.size()) + " section(s) fit below Nyquist for fd = " +
                    std::to_string(params.fd) + " Hz");
  }
  return sections;
}

std::size_t synthesis_fft_length(double fs, double t_erd_s, double truncation_factor) {
  const double span = std::max(8.0, 2.0 * truncation_factor) * t_erd_s * fs;
  return std::max<std::size_t>(next_pow2(static_cast<std::size_t>(std::ceil(span))), 16);
}

UnitCapricep unit_from_sections(std::vector<AllPassSection> sections, const DesignParams& params,
                                double t_erd_s) {
  if (!(t_erd_s > 0.0)) throw Error(ErrorCode::kInvalidArgument, "t_erd_s must be positive");
  if (!(params.fs > 0.0) || !(params.truncation_factor > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "fs and truncation_factor must be positive");
  }
  const std::size_t n_fft = synthesis_fft_length(params.fs, t_erd_s, params.truncation_factor);
  const auto full = impulse_response(cascade_phase(sections, params.fs, n_fft));

  const auto length = static_cast<std::size_t>(
      std::max(1.0, std::round(params.truncation_factor * t_erd_s * params.fs)));
  const std::size_t start = full.center_index - length / 2;

  UnitCapricep unit;
  unit.samples.assign(full.samples.begin() + static_cast<std::ptrdiff_t>(start),
                      full.samples.begin() + static_cast<std::ptrdiff_t>(start + length));
  unit.fs = params.fs;
  unit.center_index = length / 2;
  unit.t_erd_s = t_erd_s;
  unit.design = params;
  unit.sections = std::move(sections);
  unit.truncation_loss = std::max(0.0, 1.0 - energy(unit.samples));
  if (unit.truncation_loss > kMaxTruncationLoss) {
    throw Error(ErrorCode::kTruncationLoss,
                "truncation to " + std::to_string(length) + " samples discards " +
                    std::to_string(100.0 * unit.truncation_loss) + "% of the energy");
  }
  return unit;
}

UnitCapricep generate_unit(const DesignParams& params, double t_erd_s) {
  return unit_from_sections(draw_sections(params), params, t_erd_s);
}

UnitCapricep generate_unit(const DesignParams& params) {
  return generate_unit(params, nominal_t_erd(params));
}

UnitCapricep composite_unit(std::span<const AllPassSection> short_sections,
                            const DesignParams& long_params, double t_erd_s) {
  std::vector<AllPassSection> all(short_sections.begin(), short_sections.end());
  const auto long_sections = draw_sections(long_params);
  all.insert(all.end(), long_sections.begin(), long_sections.end());
  return unit_from_sections(std::move(all), long_params, t_erd_s);
}

UnitCapricep composite_unit(const DesignParams& short_params, const DesignParams& long_params) {
  const auto short_sections = draw_sections(short_params);
  auto unit = composite_unit(short_sections, long_params, nominal_t_erd(long_params));
  unit.short_design = short_params;
  return unit;
}

DesignParams raised_cosine_short_preset(double fs, std::uint64_t seed) {
  DesignParams p;
  p.fs = fs;
  p.fd = kRaisedCosineFd;
  p.alpha = kRaisedCosineAlpha;
  p.beta = kRaisedCosineAlpha;
  p.cmag = kDefaultCmag;
  p.seed = seed;
  return p;
}

double raised_cosine_support_s() { return kRaisedCosineSupport; }

}  // namespace capricep
