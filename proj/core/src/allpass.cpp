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

#include "capricep/allpass.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "capricep/error.hpp"
#include "capricep/fft.hpp"

namespace capricep {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMaxPhaseResidue = 1e-8;
// Pole-power terms below this are dropped from the cepstral series.
constexpr double kSeriesFloor = 1e-18;

void require_pow2(std::size_t n_fft) {
  if (!is_pow2(n_fft) || n_fft < 4) {
    throw Error(ErrorCode::kInvalidArgument,
                "n_fft must be a power of two >= 4, got " + std::to_string(n_fft));
  }
}

// cos/sin of w and 2w for bins 0..N/2, exact at DC, N/4 and Nyquist.
struct TrigTable {
  std::vector<double> w, c1, s1, c2, s2;

  explicit TrigTable(std::size_t n_fft) {
    const std::size_t half = n_fft / 2;
    w.resize(half + 1);
    c1.resize(half + 1);
    s1.resize(half + 1);
    c2.resize(half + 1);
    s2.resize(half + 1);
    for (std::size_t m = 0; m <= half; ++m) {
      w[m] = 2.0 * kPi * static_cast<double>(m) / static_cast<double>(n_fft);
      c1[m] = std::cos(w[m]);
      s1[m] = std::sin(w[m]);
      c2[m] = std::cos(2.0 * w[m]);
      s2[m] = std::sin(2.0 * w[m]);
    }
    c1[0] = 1.0, s1[0] = 0.0, c2[0] = 1.0, s2[0] = 0.0;
    c1[half / 2] = 0.0, s1[half / 2] = 1.0, c2[half / 2] = -1.0, s2[half / 2] = 0.0;
    c1[half] = -1.0, s1[half] = 0.0, c2[half] = 1.0, s2[half] = 0.0;
  }
};

// Adds sign * phase of one section to half[0..N/2].
void accumulate_section(const AllPassSection& s, double fs, const TrigTable& t,
                        std::span<double> half) {
  const double r = pole_radius(s.bandwidth_hz, fs);
  const double theta = 2.0 * kPi * s.center_freq_hz / fs;
  const double a1 = 2.0 * r * std::cos(theta);
  const double a2 = r * r;
  const double sign = static_cast<double>(s.time_sign);
  for (std::size_t m = 0; m < half.size(); ++m) {
    // A(e^{jw}) = 1 - a1 e^{-jw} + a2 e^{-2jw}; its argument stays in (-pi, pi)
    // because each pole factor has positive real part.
    const double re = 1.0 - a1 * t.c1[m] + a2 * t.c2[m];
    const double im = a1 * t.s1[m] - a2 * t.s2[m];
    half[m] += sign * (-2.0 * t.w[m] - 2.0 * std::atan2(im, re));
  }
}

std::vector<double> mirror_odd(std::span<const double> half, std::size_t n_fft) {
  std::vector<double> full(n_fft);
  const std::size_t h = n_fft / 2;
  for (std::size_t m = 0; m <= h; ++m) full[m] = half[m];
  for (std::size_t m = h + 1; m < n_fft; ++m) full[m] = -half[n_fft - m];
  return full;
}

std::vector<double> cepstral_half_phase(std::span<const AllPassSection> sections, double fs,
                                        std::size_t n_fft) {
  const std::size_t half = n_fft / 2;
  double sign_sum = 0.0;
  // series[n] = sum_k sign_k * Re(p_k^n), later scaled by 2/n and folded mod N.
  std::vector<double> series(1, 0.0);
  for (const auto& s : sections) {
    sign_sum += s.time_sign;
    const double r = pole_radius(s.bandwidth_hz, fs);
    const double theta = 2.0 * kPi * s.center_freq_hz / fs;
    const auto terms = static_cast<std::size_t>(std::ceil(std::log(kSeriesFloor) / std::log(r)));
    if (series.size() < terms + 1) series.resize(terms + 1, 0.0);
    const std::complex<double> p = std::polar(r, theta);
    std::complex<double> pn = p;
    const double sign = static_cast<double>(s.time_sign);
    for (std::size_t n = 1; n <= terms; ++n) {
      series[n] += sign * pn.real();
      // Re-anchor periodically so rounding does not accumulate over long series.
      if ((n & 1023) == 0) {
        pn = std::polar(std::pow(r, static_cast<double>(n + 1)),
                        std::fmod(static_cast<double>(n + 1) * theta, 2.0 * kPi));
      } else {
        pn *= p;
      }
    }
  }
  std::vector<double> folded(n_fft, 0.0);
  for (std::size_t n = 1; n < series.size(); ++n) {
    folded[n % n_fft] += 2.0 * series[n] / static_cast<double>(n);
  }
  RealFft fft(n_fft);
  std::vector<std::complex<double>> spec(fft.bins());
  fft.forward(folded, spec);
  std::vector<double> out(half + 1);
  for (std::size_t m = 0; m <= half; ++m) {
    const double w = 2.0 * kPi * static_cast<double>(m) / static_cast<double>(n_fft);
    out[m] = -2.0 * w * sign_sum + 2.0 * spec[m].imag();
  }
  out[0] = 0.0;
  out[half] = -2.0 * kPi * sign_sum;
  return out;
}

}  // namespace

void validate_section(const AllPassSection& section, double fs) {
  if (!(fs > 0.0)) throw Error(ErrorCode::kInvalidArgument, "sample rate must be positive");
  if (!(section.center_freq_hz > 0.0) || !(section.center_freq_hz < fs / 2.0)) {
    throw Error(ErrorCode::kPoleAliasing,
                "center frequency " + std::to_string(section.center_freq_hz) +
                    " Hz is outside (0, fs/2)");
  }
  if (!(section.bandwidth_hz > 0.0)) {
    throw Error(ErrorCode::kUnstablePole,
                "bandwidth " + std::to_string(section.bandwidth_hz) +
                    " Hz puts the pole on or outside the unit circle");
  }
  if (section.time_sign != 1 && section.time_sign != -1) {
    throw Error(ErrorCode::kInvalidArgument, "time_sign must be +1 or -1");
  }
}

double pole_radius(double bandwidth_hz, double fs) { return std::exp(-kPi * bandwidth_hz / fs); }

std::vector<double> section_phase(const AllPassSection& section, double fs, std::size_t n_fft) {
  require_pow2(n_fft);
  validate_section(section, fs);
  const TrigTable table(n_fft);
  std::vector<double> half(n_fft / 2 + 1, 0.0);
  accumulate_section(section, fs, table, half);
  return mirror_odd(half, n_fft);
}

CascadeResponse cascade_phase(std::span<const AllPassSection> sections, double fs,
                              std::size_t n_fft, PhaseRoute route) {
  require_pow2(n_fft);
  for (const auto& s : sections) validate_section(s, fs);
  std::vector<double> half;
  if (route == PhaseRoute::kDirect) {
    const TrigTable table(n_fft);
    half.assign(n_fft / 2 + 1, 0.0);
    for (const auto& s : sections) accumulate_section(s, fs, table, half);
  } else {
    half = cepstral_half_phase(sections, fs, n_fft);
  }
  return {mirror_odd(half, n_fft), n_fft, fs};
}

double phase_symmetry_residue(const CascadeResponse& response) {
  const auto& ph = response.phase_samples;
  const std::size_t n = ph.size();
  if (n == 0) return 0.0;
  double residue = std::max(std::abs(std::sin(ph[0])), std::abs(std::sin(ph[n / 2])));
  for (std::size_t m = 1; m < n / 2; ++m) {
    residue = std::max(residue, std::abs(std::sin(0.5 * (ph[m] + ph[n - m]))));
  }
  return residue;
}

ImpulseResponse impulse_response(const CascadeResponse& response) {
  const std::size_t n = response.fft_length;
  require_pow2(n);
  if (response.phase_samples.size() != n) {
    throw Error(ErrorCode::kInvalidArgument, "phase array length differs from fft_length");
  }
  const double residue = phase_symmetry_residue(response);
  if (residue > kMaxPhaseResidue) {
    throw Error(ErrorCode::kPhaseAsymmetry,
                "phase is not odd-symmetric (imaginary residue " + std::to_string(residue) + ")");
  }
  RealFft fft(n);
  std::vector<std::complex<double>> spec(fft.bins());
  for (std::size_t m = 0; m < spec.size(); ++m) spec[m] = std::polar(1.0, response.phase_samples[m]);
  std::vector<double> raw(n);
  fft.inverse(spec, raw);

  ImpulseResponse out;
  out.samples.resize(n);
  out.center_index = n / 2;
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) out.samples[(i + n / 2) % n] = raw[i] * scale;
  return out;
}

}  // namespace capricep
