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

// Small fixtures shared by the unit tests.

#ifndef CAPRICEP_TESTS_FIXTURES_HPP_
#define CAPRICEP_TESTS_FIXTURES_HPP_

#include <array>
#include <cstddef>
#include <vector>

#include "capricep/design.hpp"
#include "capricep/sequence.hpp"

namespace fixture {

inline capricep::UnitCapricep unit_of(std::vector<double> samples, double fs, std::size_t center) {
  capricep::UnitCapricep u;
  u.samples = std::move(samples);
  u.fs = fs;
  u.center_index = center;
  u.t_erd_s = 1.0 / fs;
  return u;
}

inline capricep::UnitCapricep delta_unit(double fs) { return unit_of({1.0}, fs, 0); }

// Four measurement units at 8 kHz; cheap enough for every test.
inline std::array<capricep::UnitCapricep, 4> small_units(std::uint64_t seed = 7) {
  capricep::DesignParams p;
  p.fs = 8000.0;
  p.seed = seed;
  return capricep::measurement_units(p);
}

}  // namespace fixture

#endif  // CAPRICEP_TESTS_FIXTURES_HPP_
