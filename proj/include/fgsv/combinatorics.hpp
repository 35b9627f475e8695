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

#ifndef FGSV_COMBINATORICS_HPP_
#define FGSV_COMBINATORICS_HPP_

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "fgsv/game.hpp"
#include "fgsv/random.hpp"

namespace fgsv {

// ln C(n, k). Sums logs for small min(k, n-k), log-gamma otherwise.
double log_binom(long n, long k);

// Law of |S intersect S0| for S uniform among size-s subsets of [n], |S0| = s0.
struct HypergeomParams {
  int n;
  int s0;
  int s;
};

// Inclusive support [max(0, s + s0 - n), min(s, s0)].
std::pair<int, int> hypergeom_support(const HypergeomParams& p);

// Zero outside the support; evaluated in log space.
double hypergeom_pmf(const HypergeomParams& p, int s1);

// Puts a uniform k-sample of `pool` (without replacement) into pool[0, k).
// Partial Fisher-Yates: O(k), any prior order of `pool` is fine.
void partial_shuffle(std::span<int> pool, int k, Rng& rng);

// Calls fn(combination) for every k-subset of `pool` in lexicographic
// position order.
void for_each_combination(std::span<const int> pool, int k,
                          const std::function<void(std::span<const int>)>& fn);

struct PairedTuple {
  IndexSet subset;
  int inside;   // z1, a member of S0 not in subset
  int outside;  // z2, a non-member of S0 not in subset
};

// Uniform sampler over the constrained families
//   A(s, s1) = {S : |S| = s, |S intersect S0| = s1}
// and the paired tuples (S, z1, z2) built on them. Keeps the S0 and
// complement pools and permutes them in place between draws.
class StratifiedSampler {
 public:
  StratifiedSampler(int n, std::span<const int> group);

  int n() const noexcept { return n_; }
  int group_size() const noexcept { return static_cast<int>(inside_.size()); }

  // Throws DomainError when (s, s1) is infeasible.
  void sample(int s, int s1, Rng& rng, IndexSet& out);
  IndexSet sample(int s, int s1, Rng& rng);

  // Throws DomainError naming the empty side when S0 \ S or S0^c \ S would be
  // empty.
  void sample_paired(int s, int s1, Rng& rng, PairedTuple& out);
  PairedTuple sample_paired(int s, int s1, Rng& rng);

  bool feasible(int s, int s1) const noexcept;
  bool paired_feasible(int s, int s1) const noexcept;

  const IndexSet& inside() const noexcept { return inside_; }
  const IndexSet& outside() const noexcept { return outside_; }

 private:
  int n_;
  IndexSet inside_;
  IndexSet outside_;
};

IndexSet sample_subset_with_intersection(Rng& rng, int n, std::span<const int> group,
                                         int s, int s1);

PairedTuple sample_paired_tuple(Rng& rng, int n, std::span<const int> group, int s,
                                int s1);

}  // namespace fgsv

#endif  // FGSV_COMBINATORICS_HPP_
