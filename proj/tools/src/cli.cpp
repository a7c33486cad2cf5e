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

#include "capricep_tools/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "capricep/analyzer.hpp"
#include "capricep/augment.hpp"
#include "capricep/design.hpp"
#include "capricep/error.hpp"
#include "capricep/rng.hpp"
#include "capricep/sequence.hpp"
#include "capricep/session.hpp"
#include "capricep/shape.hpp"
#include "capricep/signal.hpp"
#include "capricep/simulator.hpp"
#include "capricep/wav.hpp"

namespace capricep {
namespace {

namespace fs = std::filesystem;

const std::map<std::string, WavEncoding> kEncodings = {
    {"pcm16", WavEncoding::kPcm16}, {"pcm24", WavEncoding::kPcm24}, {"float32", WavEncoding::kFloat32}};

const std::map<std::string, ShapeKind> kShapes = {{"rectangular", ShapeKind::kRectangular},
                                                  {"raised-cosine", ShapeKind::kRaisedCosine}};

struct Common {
  std::uint64_t seed = 1;
  double fs = 44100.0;
  double fd = 40.0;
  double terd_ms = 0.0;
  std::string out_dir = ".";
  CLI::Option* fs_opt = nullptr;
  CLI::Option* fd_opt = nullptr;
  CLI::Option* terd_opt = nullptr;

  bool fs_given() const { return fs_opt->count() > 0; }
  bool fd_given() const { return fd_opt->count() > 0; }
  std::optional<double> terd_s() const {
    return terd_opt->count() > 0 ? std::optional<double>(terd_ms / 1000.0) : std::nullopt;
  }
};

struct DesignKnobs {
  double alpha = 8.0;
  double beta = 8.0;
  double cmag = kDefaultCmag;
  double truncation = 4.0;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "Master random seed")->capture_default_str();
  c.fs_opt = app->add_option("--fs", c.fs, "Sample rate in Hz")
                 ->check(CLI::PositiveNumber)
                 ->capture_default_str();
  c.fd_opt = app->add_option("--fd", c.fd, "Mean spacing of section center frequencies in Hz")
                 ->check(CLI::PositiveNumber)
                 ->capture_default_str();
  c.terd_opt = app->add_option("--terd-ms", c.terd_ms,
                               "Equivalent rectangular duration in ms (default 1.736/fd; alone it sets fd = 1.736/T)")
                   ->check(CLI::PositiveNumber);
  app->add_option("--out-dir", c.out_dir, "Output directory")->capture_default_str();
}

void add_knobs(CLI::App* app, DesignKnobs& k) {
  app->add_option("--alpha", k.alpha, "Beta distribution alpha")->check(CLI::PositiveNumber)->capture_default_str();
  app->add_option("--beta", k.beta, "Beta distribution beta")->check(CLI::PositiveNumber)->capture_default_str();
  app->add_option("--cmag", k.cmag, "Bandwidth as a multiple of fd")->check(CLI::PositiveNumber)->capture_default_str();
  app->add_option("--truncation", k.truncation, "Kept length in units of T_ERD")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

DesignParams params_of(const Common& c, const DesignKnobs& k) {
  DesignParams p;
  p.fs = c.fs;
  // A duration alone picks the matching spacing; both together keep fd and set the duration.
  p.fd = c.terd_s() && !c.fd_given() ? kTerdRatio / *c.terd_s() : c.fd;
  p.alpha = k.alpha;
  p.beta = k.beta;
  p.cmag = k.cmag;
  p.seed = c.seed;
  p.truncation_factor = k.truncation;
  validate(p);
  return p;
}

std::uint32_t wav_rate(double fs) {
  if (!(fs > 0.0) || fs != std::floor(fs) || fs > 4.0e9) {
    throw Error(ErrorCode::kInvalidArgument, "fs must be a whole number of Hz for WAV files");
  }
  return static_cast<std::uint32_t>(fs);
}

fs::path prepare_out_dir(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir + ": " + ec.message());
  return p;
}

void check_rate(const Common& c, std::uint32_t file_rate, const std::string& what) {
  if (c.fs_given() && static_cast<double>(file_rate) != c.fs) {
    throw Error(ErrorCode::kSampleRateMismatch,
                "sample-rate mismatch: " + what + " is " + std::to_string(file_rate) +
                    " Hz, --fs is " + format_number(c.fs) + " Hz");
  }
}

// Composite units take their short part from a seed one level below the unit's own.
UnitCapricep make_unit(const DesignParams& p, ShapeKind shape, std::optional<double> t_erd_s) {
  const double t = t_erd_s.value_or(nominal_t_erd(p));
  if (shape == ShapeKind::kRectangular) return generate_unit(p, t);
  const auto short_params = raised_cosine_short_preset(p.fs, derive_seed(p.seed, 1));
  auto unit = composite_unit(draw_sections(short_params), p, t);
  unit.short_design = short_params;
  return unit;
}

// ---------------------------------------------------------------- design

struct DesignCmd {
  Common common;
  DesignKnobs knobs;
  ShapeKind shape = ShapeKind::kRectangular;
  WavEncoding encoding = WavEncoding::kFloat32;
  bool sections = false;
  std::string name = "unit";

  void attach(CLI::App* app) {
    add_common(app, common);
    add_knobs(app, knobs);
    app->add_option("--shape", shape, "Variance shape: rectangular or raised-cosine (composite unit)")
        ->transform(CLI::CheckedTransformer(kShapes, CLI::ignore_case));
    app->add_option("--encoding", encoding, "WAV sample format")
        ->transform(CLI::CheckedTransformer(kEncodings, CLI::ignore_case));
    app->add_flag("--sections", sections, "List all-pass sections in the sidecar");
    app->add_option("--name", name, "Output file stem")->capture_default_str();
  }

  int run(std::ostream& out) {
    const auto p = params_of(common, knobs);
    const auto unit = make_unit(p, shape, common.terd_s());
    const auto dir = prepare_out_dir(common.out_dir);
    write_wav(dir / (name + ".wav"), unit.samples, wav_rate(p.fs), encoding);
    write_json(dir / (name + ".json"), unit_to_json(unit, sections));
    out << "wrote " << (dir / (name + ".wav")).string() << " (" << unit.samples.size()
        << " samples, " << unit.first_order_filter_count() << " first-order filters)\n";
    return kExitOk;
  }
};

// -------------------------------------------------------------- optimize

struct OptimizeCmd {
  Common common;
  DesignKnobs knobs;
  ShapeKind shape = ShapeKind::kRectangular;
  std::size_t units = 500;
  bool coarse = false;
  double lo = 1.0, hi = 2.5, step = 0.05;

  void attach(CLI::App* app) {
    add_common(app, common);
    add_knobs(app, knobs);
    app->add_option("--units", units, "Ensemble size")->check(CLI::Range(2, 100000))->capture_default_str();
    app->add_option("--shape", shape, "Target shape: rectangular (T_ERD search) or raised-cosine")
        ->transform(CLI::CheckedTransformer(kShapes, CLI::ignore_case));
    app->add_flag("--coarse", coarse, "Also search cmag x alpha (rectangular target)");
    app->add_option("--lo", lo, "Grid start in units of 1/fd")->capture_default_str();
    app->add_option("--hi", hi, "Grid end in units of 1/fd")->capture_default_str();
    app->add_option("--step", step, "Grid step in units of 1/fd")->check(CLI::PositiveNumber)->capture_default_str();
  }

  int run(std::ostream& out) {
    const auto p = params_of(common, knobs);
    const auto dir = prepare_out_dir(common.out_dir);
    if (shape == ShapeKind::kRaisedCosine) {
      const std::vector<double> fd_grid{2000, 3000, 4000, 5000, 6000, 7000, 8000};
      const std::vector<double> alpha_grid{1, 2, 4, 8, 16};
      const double support = common.terd_s().value_or(raised_cosine_support_s());
      const auto cells = raised_cosine_search(fd_grid, alpha_grid, p, support, units);
      std::vector<std::vector<double>> rows;
      for (const auto& c : cells) rows.push_back({c.fd, c.alpha, c.wasserstein_s});
      write_csv(dir / "raised_cosine_search.csv", {"fd_hz", "alpha", "wasserstein_s"}, rows);
      out << "best fd " << format_number(cells.front().fd) << " Hz, alpha "
          << format_number(cells.front().alpha) << "\n";
      return kExitOk;
    }
    const auto grid = terd_grid(p.fd, lo, hi, step);
    const auto r = optimize_terd(p, grid, units);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < r.grid_s.size(); ++i) {
      rows.push_back({r.grid_s[i], r.grid_s[i] * p.fd, r.distances_s[i]});
    }
    write_csv(dir / "terd_search.csv", {"t_erd_s", "t_erd_times_fd", "wasserstein_s"}, rows);
    out << "best t_erd " << format_number(r.best_t_erd_s) << " s ("
        << format_number(r.best_t_erd_s * p.fd) << " / fd)\n";
    if (coarse) {
      const std::vector<double> cmag_grid{1.0, kDefaultCmag, std::sqrt(2.0)};
      const std::vector<double> alpha_grid{1, 4, 8, 16};
      const auto cells = coarse_search(cmag_grid, alpha_grid, p, units);
      std::vector<std::vector<double>> crow;
      for (const auto& c : cells) crow.push_back({c.cmag, c.alpha, c.best_t_erd_s, c.wasserstein_s, c.cost});
      write_csv(dir / "coarse_search.csv", {"cmag", "alpha", "best_t_erd_s", "wasserstein_s", "cost"}, crow);
      out << "best cmag " << format_number(cells.front().cmag) << ", alpha "
          << format_number(cells.front().alpha) << "\n";
    }
    return kExitOk;
  }
};

// ----------------------------------------------------------- xcorr-stats

struct XcorrCmd {
  Common common;
  DesignKnobs knobs;
  std::size_t count = 100;

  void attach(CLI::App* app) {
    add_common(app, common);
    add_knobs(app, knobs);
    app->add_option("--count", count, "Number of units")->check(CLI::Range(2, 100000))->capture_default_str();
  }

  int run(std::ostream& out) {
    const auto p = params_of(common, knobs);
    const double t = common.terd_s().value_or(nominal_t_erd(p));
    std::vector<UnitCapricep> units(count);
    parallel_for(count, [&](std::size_t i) {
      DesignParams q = p;
      q.seed = derive_seed(p.seed, i);
      units[i] = generate_unit(q, t);
    });
    const auto values = pairwise_max_cross_correlation(units);
    std::vector<std::vector<double>> rows;
    std::size_t k = 0;
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = i + 1; j < count; ++j) {
        rows.push_back({static_cast<double>(i), static_cast<double>(j), values[k++]});
      }
    }
    const auto dir = prepare_out_dir(common.out_dir);
    write_csv(dir / "xcorr.csv", {"unit_i", "unit_j", "max_abs_xcorr"}, rows);
    out << "pairs " << values.size() << ", median max|xcorr| " << format_number(median(values)) << "\n";
    return kExitOk;
  }
};

// ----------------------------------------------------------- make-signal

struct MakeSignalCmd {
  Common common;
  DesignKnobs knobs;
  ShapeKind shape = ShapeKind::kRectangular;
  WavEncoding encoding = WavEncoding::kFloat32;
  std::size_t cycles = 3;
  std::size_t n_o = 0;
  double peak = 0.5;
  std::string name = "test_signal";

  void attach(CLI::App* app) {
    add_common(app, common);
    add_knobs(app, knobs);
    app->add_option("--shape", shape, "Unit shape: rectangular or raised-cosine")
        ->transform(CLI::CheckedTransformer(kShapes, CLI::ignore_case));
    app->add_option("--encoding", encoding, "WAV sample format")
        ->transform(CLI::CheckedTransformer(kEncodings, CLI::ignore_case));
    app->add_option("--cycles", cycles, "Usable 8-cycles (one warm-up and one cool-down are added)")
        ->check(CLI::Range(3, 100000))
        ->capture_default_str();
    app->add_option("--n-o", n_o, "Repetition shift in samples (default: unit length)");
    app->add_option("--peak", peak, "Peak amplitude of the written signal")
        ->check(CLI::Range(1e-6, 1.0))
        ->capture_default_str();
    app->add_option("--name", name, "Output file stem")->capture_default_str();
  }

  int run(std::ostream& out) {
    const auto p = params_of(common, knobs);
    std::vector<UnitCapricep> units(4);
    for (std::size_t m = 0; m < 4; ++m) {
      DesignParams q = p;
      q.seed = derive_seed(p.seed, m);
      units[m] = make_unit(q, shape, common.terd_s());
    }
    const std::size_t shift = n_o > 0 ? n_o : default_n_o(units[0]);
    auto ts = build_test_signal(units, shift, default_n_repeats(cycles));
    auto signal = ts.signal;
    const double scale = normalize_peak(signal, peak);
    const auto meta = describe(ts, p.seed, scale, encoding);
    const auto dir = prepare_out_dir(common.out_dir);
    write_wav(dir / (name + ".wav"), signal, wav_rate(p.fs), encoding);
    write_json(dir / (name + ".json"), to_json(meta));
    out << "wrote " << (dir / (name + ".wav")).string() << " (" << signal.size() << " samples, n_o "
        << shift << ", " << meta.n_repeats << " repetitions)\n";
    return kExitOk;
  }
};

// -------------------------------------------------------------- simulate

VirtualSystem system_from_json(const nlohmann::json& j) {
  VirtualSystem s;
  try {
    if (j.contains("lti_ir")) s.lti_ir = j.at("lti_ir").get<std::vector<double>>();
    if (j.contains("nl_coeffs")) s.nl_coeffs = j.at("nl_coeffs").get<std::vector<double>>();
    if (j.contains("noise_level_db") && !j.at("noise_level_db").is_null()) {
      s.noise_level_db = j.at("noise_level_db").get<double>();
    }
    if (j.contains("drift") && !j.at("drift").is_null()) {
      s.drift = GainDrift{j.at("drift").at("period_s").get<double>(), j.at("drift").at("depth").get<double>()};
    }
    if (j.contains("latency_samples")) s.latency_samples = j.at("latency_samples").get<std::size_t>();
    if (j.contains("noise_seed")) s.noise_seed = j.at("noise_seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMetadata, std::string("system description: ") + e.what());
  }
  return s;
}

struct SimulateCmd {
  Common common;
  std::string input, system_path, ir_path;
  std::optional<double> c2, c3, noise_db, drift_period, drift_depth;
  std::optional<std::size_t> latency;
  std::optional<std::uint64_t> noise_seed;
  double silence_s = 1.0;
  WavEncoding encoding = WavEncoding::kFloat32;

  void attach(CLI::App* app) {
    add_common(app, common);
    app->add_option("--input", input, "Excitation WAV")->required()->check(CLI::ExistingFile);
    app->add_option("--system", system_path, "JSON system description")->check(CLI::ExistingFile);
    app->add_option("--ir", ir_path, "Impulse response WAV")->check(CLI::ExistingFile);
    app->add_option("--c2", c2, "Quadratic coefficient");
    app->add_option("--c3", c3, "Cubic coefficient");
    app->add_option("--noise-db", noise_db, "Additive noise level, dB re unit RMS");
    app->add_option("--latency", latency, "Latency in samples");
    app->add_option("--drift-period", drift_period, "Gain drift period in s")->check(CLI::PositiveNumber);
    app->add_option("--drift-depth", drift_depth, "Gain drift depth in [0, 0.5)");
    app->add_option("--noise-seed", noise_seed, "Noise seed (default: --seed)");
    app->add_option("--silence-s", silence_s, "Noise-only lead-in length in s")->capture_default_str();
    app->add_option("--encoding", encoding, "WAV sample format")
        ->transform(CLI::CheckedTransformer(kEncodings, CLI::ignore_case));
  }

  int run(std::ostream& out) {
    const auto x = read_wav(input);
    check_rate(common, x.sample_rate, input);
    VirtualSystem s = system_path.empty() ? VirtualSystem{} : system_from_json(read_json(system_path));
    s.sample_rate_hz = x.sample_rate;
    s.pre_silence_s = silence_s;
    if (system_path.empty()) s.noise_seed = common.seed;
    if (!ir_path.empty()) {
      const auto ir = read_wav(ir_path);
      if (ir.sample_rate != x.sample_rate) {
        throw Error(ErrorCode::kSampleRateMismatch, "sample-rate mismatch between input and impulse response");
      }
      s.lti_ir = ir.samples;
    }
    auto set_coeff = [&s](std::size_t power, double v) {
      if (s.nl_coeffs.size() < power) s.nl_coeffs.resize(power, 0.0);
      s.nl_coeffs[power - 1] = v;
    };
    if (c2) set_coeff(2, *c2);
    if (c3) set_coeff(3, *c3);
    if (noise_db) s.noise_level_db = *noise_db;
    if (latency) s.latency_samples = *latency;
    if (noise_seed) s.noise_seed = *noise_seed;
    if (drift_period || drift_depth) {
      GainDrift d = s.drift.value_or(GainDrift{});
      if (drift_period) d.period_s = *drift_period;
      if (drift_depth) d.depth = *drift_depth;
      s.drift = d;
    }
    const auto result = capricep::run(s, x.samples);
    const auto dir = prepare_out_dir(common.out_dir);
    write_wav(dir / "response.wav", result.output, x.sample_rate, encoding);
    write_wav(dir / "silence.wav", result.pre_silence, x.sample_rate, encoding);
    out << "wrote " << (dir / "response.wav").string() << " and " << (dir / "silence.wav").string() << "\n";
    return kExitOk;
  }
};

// --------------------------------------------------------------- analyze

struct AnalyzeCmd {
  Common common;
  std::string recording, sidecar, silence;
  std::optional<std::size_t> pre_roll;
  WavEncoding encoding = WavEncoding::kFloat32;

  void attach(CLI::App* app) {
    add_common(app, common);
    app->add_option("--recording", recording, "Recorded response WAV")->required()->check(CLI::ExistingFile);
    app->add_option("--sidecar", sidecar, "JSON sidecar written by make-signal")->required()->check(CLI::ExistingFile);
    app->add_option("--silence", silence, "Noise-only WAV recorded before the test signal")->check(CLI::ExistingFile);
    app->add_option("--pre-roll", pre_roll, "Samples kept before the pulse (default n_o/8)");
    app->add_option("--encoding", encoding, "WAV sample format for the responses")
        ->transform(CLI::CheckedTransformer(kEncodings, CLI::ignore_case));
  }

  int run(std::ostream& out) {
    const auto meta = session_from_json(read_json(sidecar));
    const auto rec = read_wav(recording);
    if (static_cast<double>(rec.sample_rate) != meta.fs) {
      throw Error(ErrorCode::kSampleRateMismatch,
                  "sample-rate mismatch: recording is " + std::to_string(rec.sample_rate) +
                      " Hz, sidecar says " + format_number(meta.fs) + " Hz");
    }
    check_rate(common, rec.sample_rate, recording);
    std::vector<double> quiet;
    if (!silence.empty()) {
      const auto s = read_wav(silence);
      if (s.sample_rate != rec.sample_rate) {
        throw Error(ErrorCode::kSampleRateMismatch, "sample-rate mismatch: silence and recording differ");
      }
      quiet = s.samples;
    }
    const auto set = regenerate(meta);
    AnalysisOptions opts;
    opts.input_scale = meta.scale;
    opts.pre_roll = pre_roll;
    const auto r = decompose(rec.samples, quiet, set, opts);

    const auto dir = prepare_out_dir(common.out_dir);
    write_wav(dir / "lti_l.wav", r.lti_raw, rec.sample_rate, encoding);
    write_wav(dir / "nonl_ti.wav", r.nonlinear_ti, rec.sample_rate, encoding);
    write_wav(dir / "rntv.wav", r.random_tv, rec.sample_rate, encoding);
    write_levels_csv(dir / "levels.csv", r.levels);
    nlohmann::json summary = {
        {"schema", "capricep-analysis/1"},
        {"tool_version", tool_version()},
        {"fs", r.fs},
        {"n_o", r.n_o},
        {"pre_roll", r.pre_roll},
        {"first_pulse", r.alignment.first_pulse},
        {"n_ini", r.alignment.n_ini},
        {"omega", r.omega},
        {"reference_power", r.reference_power},
        {"nonl_ti_level_db", r.nonl_ti_level_db},
        {"rntv_level_db", r.rntv_level_db},
        {"background_valid", r.background_valid},
        {"pre_bg_level_db", r.background_valid ? nlohmann::json(r.pre_bg_level_db) : nlohmann::json()}};
    write_json(dir / "analysis.json", summary);
    out << "clean cycles " << r.omega.size() << ", nonl-TI " << format_number(r.nonl_ti_level_db)
        << " dB, RNTV " << format_number(r.rntv_level_db) << " dB\n";
    if (!r.background_valid) out << "pre-BG invalid: silence missing, shorter than 1 s, or clipped\n";
    return kExitOk;
  }
};

// --------------------------------------------------------------- augment

struct AugmentCmd {
  Common common;
  DesignKnobs knobs;
  std::string input;
  std::size_t variants = 10;
  WavEncoding encoding = WavEncoding::kFloat32;

  void attach(CLI::App* app) {
    add_common(app, common);
    add_knobs(app, knobs);
    app->add_option("--input", input, "Input WAV or directory of WAVs")->required()->check(CLI::ExistingPath);
    app->add_option("--variants", variants, "Number of filtered variants")
        ->check(CLI::Range(1, 1000000))
        ->capture_default_str();
    app->add_option("--encoding", encoding, "WAV sample format for the variants")
        ->transform(CLI::CheckedTransformer(kEncodings, CLI::ignore_case));
  }

  void one(const fs::path& file, const fs::path& dir, std::ostream& out) {
    const auto x = read_wav(file);
    check_rate(common, x.sample_rate, file.string());
    DesignParams p = params_of(common, knobs);
    p.fs = x.sample_rate;
    // Units use the nominal duration of fd, so --terd-ms only matters through fd.
    if (!common.fd_given()) p.fd = kTerdRatio / common.terd_s().value_or(kAugmentTerdS);
    const auto res = augment(x.samples, p.fs, p, variants, common.seed);
    const std::string stem = file.stem().string();
    std::vector<std::vector<double>> rows, hist;
    for (std::size_t i = 0; i < variants; ++i) {
      char name[64];
      std::snprintf(name, sizeof name, "_v%04zu.wav", i);
      write_wav(dir / (stem + name), res.variants[i], x.sample_rate, encoding);
      rows.push_back({static_cast<double>(i), res.report.snr_db[i], res.report.skewness[i],
                      res.report.spectral_delta_max_db[i]});
    }
    auto add_hist = [&hist](double id, const std::vector<std::size_t>& h) {
      for (std::size_t b = 0; b < h.size(); ++b) {
        const double center = -1.0 + (2.0 * static_cast<double>(b) + 1.0) / static_cast<double>(h.size());
        hist.push_back({id, center, static_cast<double>(h[b])});
      }
    };
    add_hist(-1.0, res.report.input_histogram);
    for (std::size_t i = 0; i < variants; ++i) add_hist(static_cast<double>(i), res.report.value_histograms[i]);
    write_csv(dir / (stem + "_report.csv"), {"variant_id", "snr_db", "skewness", "spectral_delta_max_db"}, rows);
    write_csv(dir / (stem + "_histograms.csv"), {"variant_id", "bin_center", "count"}, hist);
    out << "wrote " << variants << " variants of " << file.string() << " (input skewness "
        << format_number(res.report.input_skewness) << ")\n";
  }

  int run(std::ostream& out) {
    const auto dir = prepare_out_dir(common.out_dir);
    const fs::path in(input);
    if (!fs::is_directory(in)) {
      one(in, dir, out);
      return kExitOk;
    }
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(in)) {
      if (e.is_regular_file() && e.path().extension() == ".wav") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw Error(ErrorCode::kEmptyInput, "no .wav files in " + input);
    for (const auto& f : files) one(f, dir, out);
    return kExitOk;
  }
};

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"CAPRICEP measurement and augmentation toolkit", "capricep"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);

  DesignCmd design;
  OptimizeCmd optimize;
  XcorrCmd xcorr;
  MakeSignalCmd make_signal;
  SimulateCmd simulate;
  AnalyzeCmd analyze;
  AugmentCmd augment_cmd;

  struct Entry {
    CLI::App* app;
    std::function<int(std::ostream&)> run;
  };
  std::vector<Entry> entries;
  auto add = [&](const char* name, const char* help, auto& cmd) {
    auto* sub = app.add_subcommand(name, help);
    cmd.attach(sub);
    entries.push_back({sub, [&cmd](std::ostream& o) { return cmd.run(o); }});
  };
  add("design", "Generate one unit pulse (WAV + JSON sidecar)", design);
  add("optimize", "Grid search of the variance shape (CSV)", optimize);
  add("xcorr-stats", "Pairwise cross-correlation statistics of a unit ensemble (CSV)", xcorr);
  add("make-signal", "Build the periodic measurement test signal (WAV + JSON sidecar)", make_signal);
  add("simulate", "Run a virtual measurement system on a WAV", simulate);
  add("analyze", "Decompose a recorded response (WAV + CSV)", analyze);
  add("augment", "Filter a WAV with random units and report statistics", augment_cmd);

  // CLI11 consumes a reversed argument list without the program name.
  std::vector<std::string> rev;
  if (args.size() > 1) rev.assign(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error[E_USAGE]: " << e.what() << "\n";
    const CLI::App* failing = &app;
    for (const auto& en : entries) {
      if (en.app->parsed()) failing = en.app;
    }
    err << failing->help();
    return kExitUsage;
  }

  try {
    for (const auto& en : entries) {
      if (en.app->parsed()) return en.run(out);
    }
  } catch (const Error& e) {
    err << "error[" << error_code_name(e.code()) << "]: " << e.what() << "\n";
    return kExitDataError;
  } catch (const fs::filesystem_error& e) {
    err << "error[" << error_code_name(ErrorCode::kIo) << "]: " << e.what() << "\n";
    return kExitDataError;
  } catch (const std::exception& e) {
    err << "error[E_INTERNAL]: " << e.what() << "\n";
    return kExitDataError;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace capricep
