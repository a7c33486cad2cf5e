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

#ifndef CAPRICEP_WAV_HPP_
#define CAPRICEP_WAV_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace capricep {

enum class WavEncoding { kPcm16, kPcm24, kFloat32 };

/// "pcm16", "pcm24" or "float32".
WavEncoding parse_wav_encoding(std::string_view name);
std::string_view wav_encoding_name(WavEncoding encoding);

struct WavData {
  std::vector<double> samples;
  std::uint32_t sample_rate = 0;
  WavEncoding encoding = WavEncoding::kFloat32;
};

/// Mono RIFF/WAVE. PCM samples are clamped to the representable range;
/// full scale is 2^15 or 2^23.
std::vector<std::uint8_t> encode_wav(std::span<const double> samples, std::uint32_t sample_rate,
                                     WavEncoding encoding);
WavData decode_wav(std::span<const std::uint8_t> bytes);

void write_wav(const std::filesystem::path& path, std::span<const double> samples,
               std::uint32_t sample_rate, WavEncoding encoding);
WavData read_wav(const std::filesystem::path& path);

}  // namespace capricep

#endif  // CAPRICEP_WAV_HPP_
