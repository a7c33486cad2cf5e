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

#ifndef CAPRICEP_SESSION_HPP_
#define CAPRICEP_SESSION_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "capricep/analyzer.hpp"
#include "capricep/design.hpp"
#include "capricep/sequence.hpp"
#include "capricep/wav.hpp"

namespace capricep {

inline constexpr std::string_view kSessionSchema = "capricep-session/1";
inline constexpr std::string_view kUnitSchema = "capricep-unit/1";

std::string_view tool_version();

/// Everything needed to regenerate one unit bit-exactly.
struct UnitSpec {
  DesignParams design;
  std::optional<DesignParams> short_design;
  double t_erd_s = 0.0;

  friend bool operator==(const UnitSpec&, const UnitSpec&) = default;
};

UnitSpec spec_of(const UnitCapricep& unit);
UnitCapricep regenerate(const UnitSpec& spec);

struct SessionMetadata {
  std::string tool_version;
  double fs = 0.0;
  std::uint64_t seed = 0;
  std::array<UnitSpec, 4> units;
  std::size_t unit_length = 0;
  std::size_t n_o = 0;
  std::size_t n_repeats = 0;
  std::size_t signal_length = 0;
  double scale = 1.0;
  WavEncoding encoding = WavEncoding::kFloat32;

  friend bool operator==(const SessionMetadata&, const SessionMetadata&) = default;
};

SessionMetadata describe(const TestSignal& signal, std::uint64_t seed, double scale,
                         WavEncoding encoding);

/// Rebuilds the four units and sequences; throws kMetadata if the units do not
/// reproduce the recorded length.
SequenceSet regenerate(const SessionMetadata& meta);

nlohmann::json to_json(const DesignParams& p);
DesignParams design_from_json(const nlohmann::json& j);

nlohmann::json unit_to_json(const UnitCapricep& unit, bool include_sections);
UnitSpec unit_spec_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SessionMetadata& meta);
SessionMetadata session_from_json(const nlohmann::json& j);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

/// Header row then one row per entry; numbers printed with %.10g.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// freq_hz, lti_l_db, lti_s_db, nonl_ti_db, rntv_db, pre_bg_db, rntv_corrected_db
void write_levels_csv(const std::filesystem::path& path, const BandLevels& levels);

std::string format_number(double v);

}  // namespace capricep

#endif  // CAPRICEP_SESSION_HPP_
