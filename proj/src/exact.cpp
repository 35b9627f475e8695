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

#include "fgsv/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "fgsv/combinatorics.hpp"
#include "fgsv/errors.hpp"

namespace fgsv {

Partition::Partition(int n, std::vector<IndexSet> groups) : n_(n), groups_(std::move(groups)) {
  std::vector<unsigned char> seen(n, 0);
  int covered = 0;
  for (IndexSet& group : groups_) {
    if (group.empty()) throw DomainError("partition has an empty group");
    std::sort(group.begin(), group.end());
    for (int i : group) {
      if (i < 0 || i >= n) throw DomainError("partition player index out of range");
      if (seen[i]) throw DomainError("partition groups overlap at player " + std::to_string(i));
      seen[i] = 1;
      ++covered;
    }
  }
  if (covered != n) throw DomainError("partition does not cover every player");
}

Partition Partition::modulo(int n, int k_groups) {
  if (k_groups < 1 || k_groups > n) throw DomainError("modulo partition needs 1 <= K <= n");
  std::vector<IndexSet> groups(k_groups);
  for (int i = 0; i < n; ++i) groups[i % k_groups].push_back(i);
  return Partition(n, std::move(groups));
}

const IndexSet& Partition::group(int k) const {
  if (k < 0 || k >= size()) throw DomainError("group index out of range");
  return groups_[k];
}

int Partition::find(std::span<const int> members) const {
  IndexSet sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  for (int k = 0; k < size(); ++k) {
    if (groups_[k] == sorted) return k;
  }
  return -1;
}

namespace {

void require_cap(int n, int cap, const char* what) {
  if (n > cap) {
    throw DomainError(std::string(what) + ": refusing brute force over " + std::to_string(n) +
                      " players/groups (cap " + std::to_string(cap) + ")");
  }
}

// Utility of every subset, indexed by bitmask, filled in Gray-code order.
std::vector<double> utility_table(const Game& game) {
  const int n = game.size();
  const std::uint32_t count = std::uint32_t{1} << n;
  std::vector<double> table(count);
  IndexSet members;
  members.reserve(n);
  table[0] = game.evaluate(members);
  std::uint32_t previous = 0;
  for (std::uint32_t step = 1; step < count; ++step) {
    const std::uint32_t code = step ^ (step >> 1);
    const int flipped = std::countr_zero(code ^ previous);
    if (code & (std::uint32_t{1} << flipped)) {
      members.push_back(flipped);
    } else {
      members.erase(std::find(members.begin(), members.end(), flipped));
    }
    table[code] = game.evaluate(members);
    previous = code;
  }
  return table;
}

}  // namespace

Eigen::VectorXd exact_sv(const Game& game, int cap) {
  const int n = game.size();
  require_cap(n, std::min(cap, 30), "exact_sv");
  const std::vector<double> table = utility_table(game);

  // |S|! (n - |S| - 1)! / n!
  std::vector<double> weight(n);
  for (int s = 0; s < n; ++s) {
    weight[s] = std::exp(std::lgamma(s + 1.0) + std::lgamma(static_cast<double>(n - s)) -
                         std::lgamma(n + 1.0));
  }
  Eigen::VectorXd values = Eigen::VectorXd::Zero(n);
  const std::uint32_t count = std::uint32_t{1} << n;
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    const double w = weight[std::min(std::popcount(mask), n - 1)];
    const double base = table[mask];
    for (int i = 0; i < n; ++i) {
      const std::uint32_t bit = std::uint32_t{1} << i;
      if (!(mask & bit)) values[i] += w * (table[mask | bit] - base);
    }
  }
  return values;
}

double exact_gsv(const Game& game, const Partition& partition, int k, int cap) {
  if (partition.players() != game.size()) throw DomainError("partition size differs from game");
  const int groups = partition.size();
  if (k < 0 || k >= groups) throw DomainError("group index out of range");
  require_cap(groups, std::min(cap, 30), "exact_gsv");

  std::vector<int> others;
  for (int g = 0; g < groups; ++g) {
    if (g != k) others.push_back(g);
  }
  const int others_count = static_cast<int>(others.size());
  std::vector<double> weight(others_count + 1);
  for (int t = 0; t <= others_count; ++t) {
    weight[t] = std::exp(std::lgamma(t + 1.0) + std::lgamma(others_count - t + 1.0) -
                         std::lgamma(others_count + 2.0));
  }
  const IndexSet& target = partition.group(k);
  double value = 0.0;
  IndexSet coalition;
  const std::uint32_t count = std::uint32_t{1} << others_count;
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    coalition.clear();
    for (int t = 0; t < others_count; ++t) {
      if (mask & (std::uint32_t{1} << t)) {
        const IndexSet& members = partition.group(others[t]);
        coalition.insert(coalition.end(), members.begin(), members.end());
      }
    }
    const double without = game.evaluate(coalition);
    coalition.insert(coalition.end(), target.begin(), target.end());
    const double with = game.evaluate(coalition);
    value += weight[std::popcount(mask)] * (with - without);
  }
  return value;
}

double exact_fgsv(const Game& game, std::span<const int> group, int cap) {
  const int n = game.size();
  for (int i : group) {
    if (i < 0 || i >= n) throw DomainError("group player index out of range");
  }
  if (group.empty()) return 0.0;
  const Eigen::VectorXd values = exact_sv(game, cap);
  double total = 0.0;
  for (int i : group) total += values[i];
  return total;
}

double exact_mu(const Game& game, std::span<const int> group, int s, int s1) {
  const int n = game.size();
  const IndexSet inside(group.begin(), group.end());
  const IndexSet outside = complement(n, inside);
  const int s0 = static_cast<int>(inside.size());
  if (s < 0 || s > n || s1 < 0 || s1 > s0 || s - s1 < 0 || s - s1 > n - s0) {
    throw DomainError("exact_mu: infeasible configuration (s=" + std::to_string(s) +
                      ", s1=" + std::to_string(s1) + ")");
  }
  double sum = 0.0;
  double count = 0.0;
  IndexSet subset;
  for_each_combination(inside, s1, [&](std::span<const int> left) {
    for_each_combination(outside, s - s1, [&](std::span<const int> right) {
      subset.assign(left.begin(), left.end());
      subset.insert(subset.end(), right.begin(), right.end());
      sum += game.evaluate(subset);
      count += 1.0;
    });
  });
  return sum / count;
}

double size_term(int n, int s0, int s, const std::function<double(int)>& mu) {
  if (s < 1 || s > n - 1) {
    throw DomainError("size term defined for 1 <= s <= n-1, got s=" + std::to_string(s));
  }
  const HypergeomParams params{n, s0, s};
  const auto [lo, hi] = hypergeom_support(params);
  const double scale = static_cast<double>(n) / (n - s);
  const double alpha = static_cast<double>(s0) / n;
  double total = 0.0;
  for (int s1 = lo; s1 <= hi; ++s1) {
    const double centred = static_cast<double>(s1) / s - alpha;
    if (centred == 0.0) continue;
    total += hypergeom_pmf(params, s1) * scale * centred * mu(s1);
  }
  return total;
}

double exact_T(const Game& game, std::span<const int> group, int s) {
  const int n = game.size();
  const int s0 = static_cast<int>(group.size());
  return size_term(n, s0, s, [&](int s1) { return exact_mu(game, group, s, s1); });
}

double fgsv_via_rewrite(const Game& game, std::span<const int> group, int cap) {
  const int n = game.size();
  require_cap(n, cap, "fgsv_via_rewrite");
  if (group.empty()) return 0.0;
  const int s0 = static_cast<int>(group.size());
  double total = static_cast<double>(s0) / n * (game.evaluate_grand() - game.evaluate_empty());
  for (int s = 1; s <= n - 1; ++s) total += exact_T(game, group, s);
  return total;
}

}  // namespace fgsv
