/*
 * Copyright 2026 The FGSV Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FGSV_RANDOM_HPP_
#define FGSV_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace fgsv {

using Rng = std::mt19937_64;

// Independent stream for (seed, stream) pairs. Used to give every subset size
// s, replication and worker its own generator so that sequential and
// parallel runs draw identical samples.
Rng derive_rng(std::uint64_t seed, std::uint64_t stream);

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Uniform integer in [lo, hi].
inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace fgsv

#endif  // FGSV_RANDOM_HPP_
