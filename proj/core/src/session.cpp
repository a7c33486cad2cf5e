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

#include "capricep/session.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "capricep/error.hpp"

namespace capricep {
namespace {

[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorCode::kMetadata, "metadata: " + what);
}

template <typename T>
T field(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    bad(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

std::string_view tool_version() { return CAPRICEP_VERSION; }

UnitSpec spec_of(const UnitCapricep& unit) { return {unit.design, unit.short_design, unit.t_erd_s}; }

UnitCapricep regenerate(const UnitSpec& spec) {
  if (spec.short_design) {
    auto unit = composite_unit(draw_sections(*spec.short_design), spec.design, spec.t_erd_s);
    unit.short_design = spec.short_design;
    return unit;
  }
  return generate_unit(spec.design, spec.t_erd_s);
}

SessionMetadata describe(const TestSignal& signal, std::uint64_t seed, double scale,
                         WavEncoding encoding) {
  SessionMetadata m;
  m.tool_version = std::string(tool_version());
  m.fs = signal.set.fs;
  m.seed = seed;
  for (std::size_t i = 0; i < 4; ++i) m.units[i] = spec_of(signal.set.units[i]);
  m.unit_length = signal.set.unit_length();
  m.n_o = signal.set.n_o;
  m.n_repeats = signal.set.n_repeats;
  m.signal_length = signal.signal.size();
  m.scale = scale;
  m.encoding = encoding;
  return m;
}

SequenceSet regenerate(const SessionMetadata& meta) {
  std::vector<UnitCapricep> units(4);
  for (std::size_t i = 0; i < 4; ++i) {
    units[i] = regenerate(meta.units[i]);
    if (units[i].samples.size() != meta.unit_length) {
      bad("unit " + std::to_string(i + 1) + " regenerates with " +
          std::to_string(units[i].samples.size()) + " samples, expected " +
          std::to_string(meta.unit_length));
    }
  }
  auto ts = build_test_signal(units, meta.n_o, meta.n_repeats);
  if (ts.signal.size() != meta.signal_length) bad("test signal length does not match");
  return std::move(ts.set);
}

nlohmann::json to_json(const DesignParams& p) {
  return {{"fs", p.fs},         {"fd", p.fd},     {"alpha", p.alpha},
          {"beta", p.beta},     {"cmag", p.cmag}, {"seed", p.seed},
          {"truncation_factor", p.truncation_factor}};
}

DesignParams design_from_json(const nlohmann::json& j) {
  DesignParams p;
  p.fs = field<double>(j, "fs");
  p.fd = field<double>(j, "fd");
  p.alpha = field<double>(j, "alpha");
  p.beta = field<double>(j, "beta");
  p.cmag = field<double>(j, "cmag");
  p.seed = field<std::uint64_t>(j, "seed");
  p.truncation_factor = field<double>(j, "truncation_factor");
  return p;
}

nlohmann::json unit_to_json(const UnitCapricep& unit, bool include_sections) {
  nlohmann::json j = {{"schema", kUnitSchema},
                      {"tool_version", tool_version()},
                      {"design", to_json(unit.design)},
                      {"t_erd_s", unit.t_erd_s},
                      {"length", unit.samples.size()},
                      {"center_index", unit.center_index},
                      {"section_count", unit.sections.size()},
                      {"first_order_filter_count", unit.first_order_filter_count()},
                      {"truncation_loss", unit.truncation_loss}};
  if (unit.short_design) j["short_design"] = to_json(*unit.short_design);
  if (include_sections) {
    auto& list = j["sections"] = nlohmann::json::array();
    for (const auto& s : unit.sections) {
      list.push_back({{"center_freq_hz", s.center_freq_hz},
                      {"bandwidth_hz", s.bandwidth_hz},
                      {"time_sign", s.time_sign}});
    }
  }
  return j;
}

UnitSpec unit_spec_from_json(const nlohmann::json& j) {
  UnitSpec s;
  s.design = design_from_json(field<nlohmann::json>(j, "design"));
  s.t_erd_s = field<double>(j, "t_erd_s");
  if (j.contains("short_design")) s.short_design = design_from_json(j.at("short_design"));
  return s;
}

nlohmann::json to_json(const SessionMetadata& m) {
  nlohmann::json units = nlohmann::json::array();
  for (const auto& u : m.units) {
    nlohmann::json ju = {{"design", to_json(u.design)}, {"t_erd_s", u.t_erd_s}};
    if (u.short_design) ju["short_design"] = to_json(*u.short_design);
    units.push_back(ju);
  }
  return {{"schema", kSessionSchema},
          {"tool_version", m.tool_version},
          {"fs", m.fs},
          {"seed", m.seed},
          {"units", units},
          {"unit_length", m.unit_length},
          {"n_o", m.n_o},
          {"n_repeats", m.n_repeats},
          {"signal_length", m.signal_length},
          {"scale", m.scale},
          {"encoding", wav_encoding_name(m.encoding)}};
}

SessionMetadata session_from_json(const nlohmann::json& j) {
  const auto schema = field<std::string>(j, "schema");
  if (schema != kSessionSchema) bad("unsupported schema '" + schema + "'");
  SessionMetadata m;
  m.tool_version = field<std::string>(j, "tool_version");
  m.fs = field<double>(j, "fs");
  m.seed = field<std::uint64_t>(j, "seed");
  const auto units = field<nlohmann::json>(j, "units");
  if (!units.is_array() || units.size() != 4) bad("expected four units");
  for (std::size_t i = 0; i < 4; ++i) m.units[i] = unit_spec_from_json(units[i]);
  m.unit_length = field<std::size_t>(j, "unit_length");
  m.n_o = field<std::size_t>(j, "n_o");
  m.n_repeats = field<std::size_t>(j, "n_repeats");
  m.signal_length = field<std::size_t>(j, "signal_length");
  m.scale = field<double>(j, "scale");
  try {
    m.encoding = parse_wav_encoding(field<std::string>(j, "encoding"));
  } catch (const Error& e) {
    bad(e.what());
  }
  for (const auto& u : m.units) {
    if (u.design.fs != m.fs) bad("unit sample rate differs from session sample rate");
  }
  return m;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  f << j.dump(2) << '\n';
  if (!f) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  try {
    return nlohmann::json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    bad(path.string() + ": " + e.what());
  }
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw Error(ErrorCode::kInvalidArgument, "CSV row width mismatch");
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  f << out.str();
  if (!f) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

void write_levels_csv(const std::filesystem::path& path, const BandLevels& lv) {
  std::vector<std::vector<double>> rows;
  for (std::size_t b = 0; b < lv.freq_hz.size(); ++b) {
    rows.push_back({lv.freq_hz[b], lv.lti_l_db[b], lv.lti_s_db[b], lv.nonl_ti_db[b], lv.rntv_db[b],
                    lv.pre_bg_db[b], lv.rntv_corrected_db[b]});
  }
  write_csv(path,
            {"freq_hz", "lti_l_db", "lti_s_db", "nonl_ti_db", "rntv_db", "pre_bg_db",
             "rntv_corrected_db"},
            rows);
}

}  // namespace capricep
