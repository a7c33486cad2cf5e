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

#include "capricep/wav.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "capricep/error.hpp"

namespace capricep {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::kWavFormat, "WAV: " + what); }

void put(std::vector<std::uint8_t>& out, std::uint32_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) { out.insert(out.end(), tag, tag + 4); }

std::uint32_t get(std::span<const std::uint8_t> b, std::size_t pos, int bytes) {
  if (pos + static_cast<std::size_t>(bytes) > b.size()) bad("truncated header");
  std::uint32_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint32_t>(b[pos + i]) << (8 * i);
  return v;
}

bool tag_is(std::span<const std::uint8_t> b, std::size_t pos, const char* tag) {
  return pos + 4 <= b.size() && std::memcmp(b.data() + pos, tag, 4) == 0;
}

std::int32_t quantize(double x, double full_scale) {
  const double lo = -full_scale;
  const double hi = full_scale - 1.0;
  const double v = std::nearbyint(std::clamp(x, -1.0, 1.0) * full_scale);
  return static_cast<std::int32_t>(std::clamp(v, lo, hi));
}

}  // namespace

WavEncoding parse_wav_encoding(std::string_view name) {
  if (name == "pcm16") return WavEncoding::kPcm16;
  if (name == "pcm24") return WavEncoding::kPcm24;
  if (name == "float32") return WavEncoding::kFloat32;
  throw Error(ErrorCode::kInvalidArgument, "unknown WAV encoding: " + std::string(name));
}

std::string_view wav_encoding_name(WavEncoding encoding) {
  switch (encoding) {
    case WavEncoding::kPcm16: return "pcm16";
    case WavEncoding::kPcm24: return "pcm24";
    case WavEncoding::kFloat32: return "float32";
  }
  return "unknown";
}

std::vector<std::uint8_t> encode_wav(std::span<const double> samples, std::uint32_t sample_rate,
                                     WavEncoding encoding) {
  if (sample_rate == 0) throw Error(ErrorCode::kInvalidArgument, "WAV sample rate must be positive");
  const int width = encoding == WavEncoding::kPcm16 ? 2 : encoding == WavEncoding::kPcm24 ? 3 : 4;
  const std::uint16_t format = encoding == WavEncoding::kFloat32 ? kFormatFloat : kFormatPcm;
  const std::uint64_t data_bytes = static_cast<std::uint64_t>(samples.size()) * width;
  if (data_bytes > 0xFFFFFFFFull - 64) throw Error(ErrorCode::kInvalidArgument, "signal too long for WAV");

  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes + 1);
  put_tag(out, "RIFF");
  put(out, static_cast<std::uint32_t>(36 + data_bytes + (data_bytes & 1)), 4);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put(out, 16, 4);
  put(out, format, 2);
  put(out, 1, 2);
  put(out, sample_rate, 4);
  put(out, sample_rate * static_cast<std::uint32_t>(width), 4);
  put(out, static_cast<std::uint32_t>(width), 2);
  put(out, static_cast<std::uint32_t>(8 * width), 2);
  put_tag(out, "data");
  put(out, static_cast<std::uint32_t>(data_bytes), 4);
  for (double x : samples) {
    switch (encoding) {
      case WavEncoding::kPcm16:
        put(out, static_cast<std::uint32_t>(quantize(x, 32768.0)), 2);
        break;
      case WavEncoding::kPcm24:
        put(out, static_cast<std::uint32_t>(quantize(x, 8388608.0)), 3);
        break;
      case WavEncoding::kFloat32:
        put(out, std::bit_cast<std::uint32_t>(static_cast<float>(x)), 4);
        break;
    }
  }
  if (data_bytes & 1) out.push_back(0);
  return out;
}

WavData decode_wav(std::span<const std::uint8_t> b) {
  if (!tag_is(b, 0, "RIFF") || !tag_is(b, 8, "WAVE")) bad("not a RIFF/WAVE file");
  std::size_t pos = 12;
  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits = 0, block = 0;
  std::uint32_t rate = 0;
  while (pos + 8 <= b.size()) {
    const std::uint32_t size = get(b, pos + 4, 4);
    const std::size_t body = pos + 8;
    if (body + size > b.size()) bad("chunk extends past end of file");
    if (tag_is(b, pos, "fmt ")) {
      if (size < 16) bad("fmt chunk too short");
      format = static_cast<std::uint16_t>(get(b, body, 2));
      channels = static_cast<std::uint16_t>(get(b, body + 2, 2));
      rate = get(b, body + 4, 4);
      block = static_cast<std::uint16_t>(get(b, body + 12, 2));
      bits = static_cast<std::uint16_t>(get(b, body + 14, 2));
      if (format == kFormatExtensible) {
        if (size < 40) bad("extensible fmt chunk too short");
        format = static_cast<std::uint16_t>(get(b, body + 24, 2));  // sub-format GUID prefix
      }
      have_fmt = true;
    } else if (tag_is(b, pos, "data")) {
      if (!have_fmt) bad("data chunk before fmt chunk");
      if (channels != 1) {
        bad("unsupported channel count " + std::to_string(channels) + " (mono only)");
      }
      if (rate == 0) bad("zero sample rate");
      WavData out;
      out.sample_rate = rate;
      int width = 0;
      if (format == kFormatPcm && bits == 16) {
        out.encoding = WavEncoding::kPcm16;
        width = 2;
      } else if (format == kFormatPcm && bits == 24) {
        out.encoding = WavEncoding::kPcm24;
        width = 3;
      } else if (format == kFormatFloat && bits == 32) {
        out.encoding = WavEncoding::kFloat32;
        width = 4;
      } else {
        bad("unsupported sample format " + std::to_string(format) + " with " + std::to_string(bits) +
            " bits");
      }
      if (block != width) bad("block alignment does not match sample width");
      if (size % static_cast<std::uint32_t>(width) != 0) bad("data size is not a whole number of samples");
      const std::size_t count = size / static_cast<std::uint32_t>(width);
      out.samples.resize(count);
      for (std::size_t i = 0; i < count; ++i) {
        const std::uint32_t raw = get(b, body + i * width, width);
        switch (out.encoding) {
          case WavEncoding::kPcm16:
            out.samples[i] = static_cast<std::int16_t>(raw) / 32768.0;
            break;
          case WavEncoding::kPcm24: {
            const auto v = static_cast<std::int32_t>(raw << 8) >> 8;
            out.samples[i] = v / 8388608.0;
            break;
          }
          case WavEncoding::kFloat32:
            out.samples[i] = std::bit_cast<float>(raw);
            break;
        }
      }
      return out;
    }
    pos = body + size + (size & 1);
  }
  bad(have_fmt ? "missing data chunk" : "missing fmt chunk");
}

void write_wav(const std::filesystem::path& path, std::span<const double> samples,
               std::uint32_t sample_rate, WavEncoding encoding) {
  const auto bytes = encode_wav(samples, sample_rate, encoding);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

WavData read_wav(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  try {
    return decode_wav(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace capricep
