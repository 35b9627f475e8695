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

#ifndef FGSV_EXACT_HPP_
#define FGSV_EXACT_HPP_

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fgsv/game.hpp"

namespace fgsv {

inline constexpr int kDefaultExactCap = 20;

// Disjoint, non-empty groups covering {0, ..., n-1}.
class Partition {
 public:
  // Throws DomainError if the groups overlap, miss a player or are empty.
  Partition(int n, std::vector<IndexSet> groups);

  // S_k = {i : i mod k_groups == k}.
  static Partition modulo(int n, int k_groups);

  int players() const noexcept { return n_; }
  int size() const noexcept { return static_cast<int>(groups_.size()); }
  const IndexSet& group(int k) const;
  const std::vector<IndexSet>& groups() const noexcept { return groups_; }

  // Index of the group equal (as a set) to `members`, or -1.
  int find(std::span<const int> members) const;

 private:
  int n_;
  std::vector<IndexSet> groups_;
};

// Brute-force Shapley values. Evaluates every subset exactly once (2^n
// evaluations) into a table and assembles marginals from it; subsets are
// visited in Gray-code order. Refuses n > cap.
Eigen::VectorXd exact_sv(const Game& game, int cap = kDefaultExactCap);

// Group-as-individual Shapley value of group k (groups treated as players,
// enumerating coalitions of the other groups). Refuses more than cap groups.
double exact_gsv(const Game& game, const Partition& partition, int k,
                 int cap = kDefaultExactCap);

// Sum of exact individual Shapley values over `group`.
double exact_fgsv(const Game& game, std::span<const int> group,
                  int cap = kDefaultExactCap);

// Mean of U over {S : |S| = s, |S intersect S0| = s1}.
double exact_mu(const Game& game, std::span<const int> group, int s, int s1);

// T(s) = E_{s1 ~ HG(n, s0, s)} [ n/(n-s) (s1/s - s0/n) mu(s1/s) ] with the
// exact pmf and a caller-supplied mu(s1). For 1 <= s <= n-1.
double size_term(int n, int s0, int s, const std::function<double(int)>& mu);

// size_term with mu from exact_mu.
double exact_T(const Game& game, std::span<const int> group, int s);

// (s0/n)[U([n]) - U(empty)] + sum_{s=1}^{n-1} exact_T(s).
double fgsv_via_rewrite(const Game& game, std::span<const int> group,
                        int cap = kDefaultExactCap);

}  // namespace fgsv

#endif  // FGSV_EXACT_HPP_
