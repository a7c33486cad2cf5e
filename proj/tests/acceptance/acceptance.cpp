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

// Acceptance gate. Each criterion runs on its own (--criterion N) and prints
// one PASS/FAIL line; the exit status is 0 only on PASS.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "capricep/allpass.hpp"
#include "capricep/analyzer.hpp"
#include "capricep/augment.hpp"
#include "capricep/design.hpp"
#include "capricep/fft.hpp"
#include "capricep/rng.hpp"
#include "capricep/sequence.hpp"
#include "capricep/shape.hpp"
#include "capricep/signal.hpp"
#include "capricep/simulator.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace capricep;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [x]");
  }
};

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

DesignParams seeded(std::uint64_t seed) {
  DesignParams p;
  p.seed = seed;
  return p;
}

// ---------------------------------------------------------------------------

void all_pass_exactness(Verdict& v) {
  double worst_mag = 0.0, worst_energy = 0.0, slowest = 0.0;
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto t0 = std::chrono::steady_clock::now();
    const DesignParams p = seeded(derive_seed(2026, s));
    const auto sections = draw_sections(p);
    const std::size_t n = synthesis_fft_length(p.fs, nominal_t_erd(p), p.truncation_factor);
    const auto ir = impulse_response(cascade_phase(sections, p.fs, n));
    slowest = std::max(slowest, seconds_since(t0));

    RealFft fft(n);
    std::vector<std::complex<double>> spec(fft.bins());
    fft.forward(ir.samples, spec);
    for (const auto& c : spec) worst_mag = std::max(worst_mag, std::abs(std::abs(c) - 1.0));
    worst_energy = std::max(worst_energy, std::abs(energy(ir.samples) - 1.0));
  }
  v.check(worst_mag <= 1e-12, "max ||H|-1| " + fmt(worst_mag));
  v.check(worst_energy <= 1e-9, "max |E-1| " + fmt(worst_energy));
  v.check(slowest < 1.0, "slowest unit " + fmt(slowest, 3) + " s");
}

void section_count(Verdict& v) {
  double total = 0.0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    total += static_cast<double>(2 * draw_sections(seeded(derive_seed(7, s))).size());
  }
  const double mean = total / 50.0;
  v.check(mean >= 1080.0 && mean <= 1125.0, "mean first-order filter count " + fmt(mean, 6));
}

void terd_optimum(Verdict& v) {
  const DesignParams p;
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = optimize_terd(p, terd_grid(p.fd), 500);
  const double ratio = r.best_t_erd_s * p.fd;
  v.check(ratio >= 1.64 && ratio <= 1.84, "best T_ERD " + fmt(ratio) + "/F_d");
  v.check(seconds_since(t0) < 600.0, "runtime " + fmt(seconds_since(t0), 3) + " s");
}

void cross_correlation(Verdict& v) {
  std::vector<UnitCapricep> units(100);
  parallel_for(units.size(), [&](std::size_t i) { units[i] = generate_unit(seeded(derive_seed(11, i))); });
  const double m = median(pairwise_max_cross_correlation(units));
  v.check(m >= 0.06 && m <= 0.12, "median max|xcorr| " + fmt(m));
}

// Peak at the pulse positions against the RMS outside a guard around them.
double pulse_to_background_db(std::span<const double> q, std::size_t n_o, std::size_t first,
                              std::size_t last, std::size_t guard) {
  double peak = 0.0, acc = 0.0;
  std::size_t count = 0;
  for (std::size_t n = first; n < last; ++n) {
    const std::size_t phase = n % n_o;
    const std::size_t dist = std::min(phase, n_o - phase);
    if (dist == 0) peak = std::max(peak, std::abs(q[n]));
    if (dist > guard) {
      acc += q[n] * q[n];
      ++count;
    }
  }
  return 20.0 * std::log10(peak / std::sqrt(acc / static_cast<double>(count)));
}

void compression_background(Verdict& v) {
  DesignParams p;
  p.fd = kTerdRatio / 0.2;
  p.seed = 5;
  const auto units = measurement_units(p);
  const std::size_t n_o = default_n_o(units[0]);
  const auto t = build_test_signal(units, n_o, default_n_repeats(3));
  const auto q = compress(t.signal, units, n_o);
  const auto r = orthogonalize(q, kB4, n_o);
  const auto guard = static_cast<std::size_t>(std::round(0.002 * p.fs));
  // Steady state: every pulse in cycles 1..3 sees all overlapping neighbours.
  const double q_pbr = pulse_to_background_db(q.q[0], n_o, 8 * n_o, 32 * n_o, guard);
  const double r_pbr = pulse_to_background_db(r[0], n_o, 8 * n_o, 24 * n_o, guard);
  v.check(q_pbr >= 40.0 && q_pbr <= 50.0, "q1 pulse-to-background " + fmt(q_pbr) + " dB");
  v.check(r_pbr - q_pbr >= 20.0, "orthogonalized gain " + fmt(r_pbr - q_pbr) + " dB");
}

double worst_leakage(const std::array<UnitCapricep, 4>& units, std::size_t n_o) {
  double worst = 0.0;
  for (std::size_t s = 0; s < 4; ++s) {
    const auto seq = build_sequence(units[s].samples, kB4[s], n_o, 32);
    const auto q = compress(seq, units, n_o);
    const auto r = orthogonalize(q, kB4, n_o);
    const std::size_t lo = 8 * n_o, hi = 16 * n_o;
    const double own = max_abs(std::span<const double>(r[s]).subspan(lo, hi - lo));
    for (std::size_t m = 0; m < 4; ++m) {
      if (m == s) continue;
      const double leak = max_abs(std::span<const double>(r[m]).subspan(lo, hi - lo));
      worst = std::max(worst, leak / own);
    }
  }
  return worst;
}

void orthogonality(Verdict& v) {
  bool exact = true;
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      int dot = 0;
      for (std::size_t k = 0; k < 8; ++k) dot += kB4[a][k] * kB4[b][k];
      exact = exact && dot == (a == b ? 8 : 0);
    }
  }
  v.check(exact, "B4 inner products 0/8");

  std::array<UnitCapricep, 4> deltas;
  for (auto& d : deltas) {
    d.samples = {1.0};
    d.fs = 44100.0;
  }
  const double delta_leak = worst_leakage(deltas, 64);
  v.check(delta_leak <= 1e-10, "delta-unit leakage " + fmt(delta_leak));

  DesignParams p;
  p.fs = 8000.0;
  const auto units = measurement_units(p);
  const double unit_leak = worst_leakage(units, default_n_o(units[0]));
  v.check(unit_leak <= 1e-10, "random-unit leakage " + fmt(unit_leak));
}

// 2048-tap decaying noise tail with a direct-path spike at tap 12.
std::vector<double> room_fir() {
  auto g = oracle::white_noise(2048, 0.2, 404);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] *= std::exp(-static_cast<double>(i) / 400.0);
  g[12] = 1.0;
  return g;
}

void end_to_end(Verdict& v) {
  const auto units = measurement_units(seeded(77));
  const std::size_t n_o = default_n_o(units[0]);
  const auto t = build_test_signal(units, n_o, default_n_repeats(3));
  auto x = t.signal;
  const double scale = normalize_peak(x, 0.5);
  const auto g = room_fir();
  const std::size_t peak_tap = 12, latency = 777;

  auto measure = [&](double c3, std::optional<double> noise_db, double& seconds) {
    VirtualSystem s;
    s.lti_ir = g;
    s.nl_coeffs = {1.0, 0.0, c3};
    s.noise_level_db = noise_db;
    s.latency_samples = latency;
    s.noise_seed = 99;
    const auto t0 = std::chrono::steady_clock::now();
    const auto out = run(s, x);
    AnalysisOptions opt;
    opt.input_scale = scale;
    auto res = decompose(out.output, out.pre_silence, t.set, opt);
    seconds = seconds_since(t0);
    return res;
  };

  double slowest = 0.0, secs = 0.0;
  std::vector<double> nonl;
  for (double c3 : {0.0, 0.01, 0.03, 0.1}) {
    const auto res = measure(c3, std::nullopt, secs);
    slowest = std::max(slowest, secs);
    nonl.push_back(res.nonl_ti_level_db);
    if (c3 == 0.0) {
      std::vector<double> truth(n_o, 0.0);
      for (std::size_t i = 0; i < g.size(); ++i) truth[res.pre_roll - peak_tap + i] = g[i];
      double e = 0.0, r = 0.0;
      for (std::size_t i = 0; i < n_o; ++i) {
        e += (res.lti_raw[i] - truth[i]) * (res.lti_raw[i] - truth[i]);
        r += truth[i] * truth[i];
      }
      const double snr = 10.0 * std::log10(r / e);
      v.check(snr >= 40.0, "LTI-L SNR " + fmt(snr) + " dB");
    }
  }
  bool monotone = true;
  for (std::size_t i = 1; i < nonl.size(); ++i) monotone = monotone && nonl[i] > nonl[i - 1];
  v.check(monotone, "nonl-TI " + fmt(nonl[0]) + " < " + fmt(nonl[1]) + " < " + fmt(nonl[2]) + " < " +
                        fmt(nonl[3]) + " dB");

  const double noise_db = -40.0;
  const auto res = measure(0.0, noise_db, secs);
  slowest = std::max(slowest, secs);
  const double sigma2 = std::pow(10.0, noise_db / 10.0);
  const double expected_db =
      10.0 * std::log10(sigma2 * static_cast<double>(n_o) /
                        (8.0 * static_cast<double>(res.omega.size())) / (scale * scale) / res.reference_power);
  v.check(std::abs(res.rntv_level_db - expected_db) <= 3.0,
          "RNTV " + fmt(res.rntv_level_db) + " dB vs injected " + fmt(expected_db) + " dB");
  v.check(slowest < 60.0, "slowest case " + fmt(slowest, 3) + " s");
}

void averaging_gain(Verdict& v) {
  DesignParams p;
  p.fs = 8000.0;
  const auto units = measurement_units(p);
  const std::size_t n_o = default_n_o(units[0]);
  const auto noise = oracle::white_noise(8 * n_o * 19, 1.0, 808);
  const auto q = compress(noise, units, n_o);
  const auto r = orthogonalize(q, kB4, n_o);
  for (std::size_t count : {4u, 16u}) {
    std::vector<std::size_t> omega;
    double single = 0.0;
    for (std::size_t c = 1; c <= count; ++c) {
      omega.push_back(c);
      const std::vector<std::size_t> one{c};
      single += energy(synchronous_average(r[0], 0, n_o, one));
    }
    single /= static_cast<double>(count);
    const double averaged = energy(synchronous_average(r[0], 0, n_o, omega));
    const double reduction = std::sqrt(single / averaged);
    const double expected = std::sqrt(static_cast<double>(count));
    v.check(std::abs(reduction / expected - 1.0) <= 0.2,
            "#Omega " + std::to_string(count) + ": reduction " + fmt(reduction) + " vs " + fmt(expected));
  }
}

void augmentation(Verdict& v) {
  const double fs = 16000.0;
  const std::size_t n = 32000;
  // Damped-resonance pulse train: a strongly asymmetric waveform.
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i % 137);
    x[i] = 0.6 * std::exp(-0.07 * t) * std::cos(0.3 * t);
  }
  const auto res = augment(x, fs, augment_params(fs), 10, 31);
  double worst_delta = 0.0, worst_energy = 0.0, worst_skew = 0.0;
  for (std::size_t i = 0; i < res.variants.size(); ++i) {
    worst_delta = std::max(worst_delta, res.report.spectral_delta_max_db[i]);
    worst_energy = std::max(worst_energy, std::abs(res.report.energy_ratio[i] - 1.0));
    worst_skew = std::max(worst_skew, std::abs(res.report.skewness[i]));
  }
  v.check(worst_delta <= 0.5, "max band deviation " + fmt(worst_delta) + " dB");
  v.check(worst_energy <= 0.01, "max energy error " + fmt(100.0 * worst_energy) + "%");
  v.check(worst_skew < std::abs(res.report.input_skewness),
          "skewness " + fmt(res.report.input_skewness) + " -> max " + fmt(worst_skew));

  const auto identity = unit_from_sections({}, augment_params(fs), kAugmentTerdS);
  const std::array<UnitCapricep, 1> k0{identity};
  v.check(augment(x, fs, k0).variants[0] == x, "K = 0 variant bit-exact");
}

// --------------------------------------------------------------------------

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    files[fs::relative(e.path(), dir).string()] =
        std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  return files;
}

int shell(const std::string& cmd) { return std::system((cmd + " > /dev/null 2>&1").c_str()); }

void reproducibility(Verdict& v, const std::string& cli, const fs::path& work) {
  if (cli.empty() || !fs::exists(cli)) {
    v.check(false, "CLI binary not available");
    return;
  }
  const auto root = work / "repro";
  std::array<std::map<std::string, std::string>, 2> runs;
  for (int k = 0; k < 2; ++k) {
    const auto dir = root / ("run" + std::to_string(k));
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string d = "'" + dir.string() + "'";
    const std::string c = "'" + cli + "'";
    bool ok = shell(c + " design --seed 21 --sections --out-dir " + d) == 0;
    ok = ok && shell(c + " design --seed 21 --shape raised-cosine --name composite --out-dir " + d) == 0;
    ok = ok && shell(c + " xcorr-stats --seed 21 --count 8 --fs 8000 --out-dir " + d) == 0;
    ok = ok && shell(c + " optimize --seed 21 --units 16 --fs 8000 --out-dir " + d) == 0;
    ok = ok && shell(c + " make-signal --seed 21 --fs 8000 --encoding pcm24 --out-dir " + d) == 0;
    ok = ok && shell(c + " simulate --seed 21 --input " + d + "/test_signal.wav --c3 0.02 --noise-db -70 "
                         "--latency 50 --out-dir " + d) == 0;
    ok = ok && shell(c + " analyze --recording " + d + "/response.wav --silence " + d +
                         "/silence.wav --sidecar " + d + "/test_signal.json --out-dir " + d + "/analysis") == 0;
    ok = ok && shell(c + " augment --seed 21 --input " + d + "/response.wav --variants 2 --out-dir " + d +
                         "/aug") == 0;
    v.check(ok, "run " + std::to_string(k + 1) + " exit codes");
    runs[k] = snapshot(dir);
  }
  v.check(!runs[0].empty() && runs[0] == runs[1],
          std::to_string(runs[0].size()) + " output files byte-identical");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  int criterion = 0;
  std::string cli;
  std::string work = (fs::temp_directory_path() / "capricep_acceptance").string();
  app.add_option("--criterion", criterion)->required()->check(CLI::Range(1, 10));
  app.add_option("--cli", cli);
  app.add_option("--work-dir", work);
  CLI11_PARSE(app, argc, argv);
  fs::create_directories(work);

  static const char* const names[] = {"",
                                      "all-pass exactness",
                                      "section count",
                                      "T_ERD optimum",
                                      "cross-correlation median",
                                      "compression background",
                                      "orthogonality",
                                      "end-to-end decomposition",
                                      "synchronous-averaging gain",
                                      "augmentation",
                                      "reproducibility"};
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    switch (criterion) {
      case 1: all_pass_exactness(v); break;
      case 2: section_count(v); break;
      case 3: terd_optimum(v); break;
      case 4: cross_correlation(v); break;
      case 5: compression_background(v); break;
      case 6: orthogonality(v); break;
      case 7: end_to_end(v); break;
      case 8: averaging_gain(v); break;
      case 9: augmentation(v); break;
      case 10: reproducibility(v, cli, work); break;
      default: break;
    }
  } catch (const std::exception& e) {
    v.check(false, std::string("exception: ") + e.what());
  }
  std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << criterion << " (" << names[criterion]
            << "): " << v.detail.str() << " [" << fmt(seconds_since(t0), 3) << " s]" << std::endl;
  return v.pass ? 0 : 1;
}
