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

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "capricep/allpass.hpp"
#include "capricep/analyzer.hpp"
#include "capricep/design.hpp"
#include "capricep/sequence.hpp"

namespace {

using namespace capricep;

void BM_CascadePhase(benchmark::State& state) {
  const DesignParams p;
  const auto sections = draw_sections(p);
  const auto route = state.range(0) == 0 ? PhaseRoute::kCepstral : PhaseRoute::kDirect;
  const std::size_t n = synthesis_fft_length(p.fs, nominal_t_erd(p), p.truncation_factor);
  for (auto _ : state) benchmark::DoNotOptimize(cascade_phase(sections, p.fs, n, route));
  state.SetLabel(route == PhaseRoute::kCepstral ? "cepstral" : "direct");
}
BENCHMARK(BM_CascadePhase)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_GenerateUnit(benchmark::State& state) {
  DesignParams p;
  p.fd = static_cast<double>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    p.seed = seed++;
    benchmark::DoNotOptimize(generate_unit(p));
  }
}
BENCHMARK(BM_GenerateUnit)->Arg(40)->Arg(868)->Unit(benchmark::kMillisecond);

void BM_Compress(benchmark::State& state) {
  const auto units = measurement_units(DesignParams{});
  const std::size_t n_o = default_n_o(units[0]);
  const auto t = build_test_signal(units, n_o, default_n_repeats(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(compress(t.signal, units, n_o));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * t.signal.size()));
}
BENCHMARK(BM_Compress)->Arg(3)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
