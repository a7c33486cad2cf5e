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

#ifndef CAPRICEP_RNG_HPP_
#define CAPRICEP_RNG_HPP_

#include <cstdint>
#include <random>

namespace capricep {

using Engine = std::mt19937_64;

/// Derives an independent stream seed from a user seed and a stream index
/// (unit index in an ensemble, sequence index in a measurement set, ...).
/// Two rounds of the splitmix64 finalizer over (seed, index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Beta(alpha, beta) draw as X / (X + Y) with X ~ Gamma(alpha), Y ~ Gamma(beta).
double draw_beta(Engine& engine, double alpha, double beta);

/// +1 or -1 with equal probability, from the top bit of one engine output.
int draw_sign(Engine& engine);

}  // namespace capricep

#endif  // CAPRICEP_RNG_HPP_
