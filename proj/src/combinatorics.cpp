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

#include "fgsv/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "fgsv/errors.hpp"

namespace fgsv {
namespace {

constexpr long kDirectSumLimit = 256;

}  // namespace

double log_binom(long n, long k) {
  if (k < 0 || n < 0 || k > n) {
    throw DomainError("log_binom: k=" + std::to_string(k) + " outside [0, " +
                      std::to_string(n) + "]");
  }
  const long m = std::min(k, n - k);
  if (m == 0) return 0.0;
  if (m <= kDirectSumLimit) {
    // ln prod_{j=1}^{m} (n - m + j) / j; each factor is >= 1.
    double sum = 0.0;
    for (long j = 1; j <= m; ++j) {
      sum += std::log(static_cast<double>(n - m + j) / static_cast<double>(j));
    }
    return sum;
  }
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

std::pair<int, int> hypergeom_support(const HypergeomParams& p) {
  return {std::max(0, p.s + p.s0 - p.n), std::min(p.s, p.s0)};
}

double hypergeom_pmf(const HypergeomParams& p, int s1) {
  if (p.n < 0 || p.s0 < 0 || p.s0 > p.n || p.s < 0 || p.s > p.n) return 0.0;
  const auto [lo, hi] = hypergeom_support(p);
  if (s1 < lo || s1 > hi) return 0.0;
  const double log_p = log_binom(p.s0, s1) + log_binom(p.n - p.s0, p.s - s1) -
                       log_binom(p.n, p.s);
  return std::exp(log_p);
}

void partial_shuffle(std::span<int> pool, int k, Rng& rng) {
  const int size = static_cast<int>(pool.size());
  if (k < 0 || k > size) throw DomainError("partial_shuffle: sample larger than pool");
  for (int i = 0; i < k; ++i) {
    const int j = uniform_int(rng, i, size - 1);
    std::swap(pool[i], pool[j]);
  }
}

void for_each_combination(std::span<const int> pool, int k,
                          const std::function<void(std::span<const int>)>& fn) {
  const int size = static_cast<int>(pool.size());
  if (k < 0 || k > size) return;
  std::vector<int> position(k);
  std::vector<int> chosen(k);
  for (int i = 0; i < k; ++i) position[i] = i;
  while (true) {
    for (int i = 0; i < k; ++i) chosen[i] = pool[position[i]];
    fn(chosen);
    int i = k - 1;
    while (i >= 0 && position[i] == size - k + i) --i;
    if (i < 0) return;
    ++position[i];
    for (int j = i + 1; j < k; ++j) position[j] = position[j - 1] + 1;
  }
}

StratifiedSampler::StratifiedSampler(int n, std::span<const int> group)
    : n_(n), inside_(group.begin(), group.end()) {
  std::sort(inside_.begin(), inside_.end());
  if (std::adjacent_find(inside_.begin(), inside_.end()) != inside_.end()) {
    throw DomainError("group has a duplicate player");
  }
  outside_ = complement(n, inside_);
}

bool StratifiedSampler::feasible(int s, int s1) const noexcept {
  const int s0 = group_size();
  return s >= 0 && s <= n_ && s1 >= 0 && s1 <= s0 && s - s1 >= 0 && s - s1 <= n_ - s0;
}

bool StratifiedSampler::paired_feasible(int s, int s1) const noexcept {
  const int s0 = group_size();
  return feasible(s, s1) && s0 >= s1 + 1 && n_ - s0 >= s - s1 + 1;
}

void StratifiedSampler::sample(int s, int s1, Rng& rng, IndexSet& out) {
  if (!feasible(s, s1)) {
    throw DomainError("infeasible configuration: no subset of size " + std::to_string(s) +
                      " meets a group of size " + std::to_string(group_size()) + " in " +
                      std::to_string(s1) + " players (n=" + std::to_string(n_) + ")");
  }
  partial_shuffle(inside_, s1, rng);
  partial_shuffle(outside_, s - s1, rng);
  out.assign(inside_.begin(), inside_.begin() + s1);
  out.insert(out.end(), outside_.begin(), outside_.begin() + (s - s1));
}

IndexSet StratifiedSampler::sample(int s, int s1, Rng& rng) {
  IndexSet out;
  sample(s, s1, rng, out);
  return out;
}

void StratifiedSampler::sample_paired(int s, int s1, Rng& rng, PairedTuple& out) {
  if (!feasible(s, s1)) {
    throw DomainError("infeasible paired configuration (s=" + std::to_string(s) +
                      ", s1=" + std::to_string(s1) + ")");
  }
  const int s0 = group_size();
  if (s0 < s1 + 1) {
    throw DomainError("infeasible paired configuration: S0 \\ S is empty (|S0|=" +
                      std::to_string(s0) + ", s1=" + std::to_string(s1) + ")");
  }
  if (n_ - s0 < s - s1 + 1) {
    throw DomainError("infeasible paired configuration: S0^c \\ S is empty (|S0^c|=" +
                      std::to_string(n_ - s0) + ", s-s1=" + std::to_string(s - s1) + ")");
  }
  // One more Fisher-Yates step on each pool gives z1 and z2 uniform over the
  // members not already drawn.
  partial_shuffle(inside_, s1 + 1, rng);
  partial_shuffle(outside_, s - s1 + 1, rng);
  out.subset.assign(inside_.begin(), inside_.begin() + s1);
  out.subset.insert(out.subset.end(), outside_.begin(), outside_.begin() + (s - s1));
  out.inside = inside_[s1];
  out.outside = outside_[s - s1];
}

PairedTuple StratifiedSampler::sample_paired(int s, int s1, Rng& rng) {
  PairedTuple out;
  sample_paired(s, s1, rng, out);
  return out;
}

IndexSet sample_subset_with_intersection(Rng& rng, int n, std::span<const int> group,
                                         int s, int s1) {
  StratifiedSampler sampler(n, group);
  return sampler.sample(s, s1, rng);
}

PairedTuple sample_paired_tuple(Rng& rng, int n, std::span<const int> group, int s, int s1) {
  StratifiedSampler sampler(n, group);
  return sampler.sample_paired(s, s1, rng);
}

}  // namespace fgsv
