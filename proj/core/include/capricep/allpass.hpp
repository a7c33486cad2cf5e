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

#ifndef CAPRICEP_ALLPASS_HPP_
#define CAPRICEP_ALLPASS_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace capricep {

/// One real second-order all-pass stage built from the conjugate pole pair
/// {z, z*}, z = exp(-pi*b/fs + j*2*pi*f/fs). A negative time_sign realizes the
/// time-reversed (anti-causal) stage by negating the phase.
struct AllPassSection {
  double center_freq_hz = 0.0;
  double bandwidth_hz = 0.0;
  int time_sign = 1;

  friend bool operator==(const AllPassSection&, const AllPassSection&) = default;
};

/// Throws Error(kPoleAliasing) when f is outside (0, fs/2), Error(kUnstablePole)
/// when b <= 0, Error(kInvalidArgument) for a time_sign other than +-1.
void validate_section(const AllPassSection& section, double fs);

/// Pole radius exp(-pi*b/fs).
double pole_radius(double bandwidth_hz, double fs);

/// Unwrapped phase of one section on all n_fft bins, odd-symmetric about DC
/// (bins above n_fft/2 hold the negative frequencies). Closed form per bin.
std::vector<double> section_phase(const AllPassSection& section, double fs, std::size_t n_fft);

/// How cascade_phase sums the section phases. Both are exact up to rounding;
/// kDirect adds section_phase for every section, kCepstral folds the pole
/// power series log(1 - p e^{-jw}) onto the FFT grid and needs one FFT.
enum class PhaseRoute { kCepstral, kDirect };

struct CascadeResponse {
  std::vector<double> phase_samples;  // radians, length fft_length
  std::size_t fft_length = 0;
  double sample_rate_hz = 0.0;
};

CascadeResponse cascade_phase(std::span<const AllPassSection> sections, double fs,
                              std::size_t n_fft, PhaseRoute route = PhaseRoute::kCepstral);

/// Largest imaginary-part bound implied by the phase array: the maximum over
/// bin pairs of |sin((phi[m] + phi[N-m]) / 2)|, plus |sin phi| at DC and Nyquist.
double phase_symmetry_residue(const CascadeResponse& response);

struct ImpulseResponse {
  std::vector<double> samples;
  std::size_t center_index = 0;  // time origin of the all-pass; == samples.size() / 2
};

/// Real impulse response of exp(j*phase), circularly rotated so that time zero
/// sits at fft_length/2. Throws Error(kPhaseAsymmetry) if the residue exceeds 1e-8.
ImpulseResponse impulse_response(const CascadeResponse& response);

}  // namespace capricep

#endif  // CAPRICEP_ALLPASS_HPP_
