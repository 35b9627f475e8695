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

#ifndef FGSV_BASELINES_HPP_
#define FGSV_BASELINES_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "fgsv/game.hpp"
#include "fgsv/metrics.hpp"
#include "fgsv/random.hpp"

namespace fgsv {

struct SvSnapshot {
  std::uint64_t evaluations = 0;
  Eigen::VectorXd values;
  std::int64_t wall_time_ns = 0;
};

// Individual Shapley estimates under a fixed evaluation budget.
struct SvEstimate {
  Eigen::VectorXd values;
  std::uint64_t evaluations_used = 0;
  // Full-vector snapshots every checkpoint_interval evaluations.
  std::vector<SvSnapshot> snapshots;
  // Group Testing only: estimate for the appended dummy player.
  std::optional<double> dummy_value;
  std::vector<std::string> warnings;
};

enum class BaselineMethod {
  kPermutation,
  kGroupTesting,
  kComplementContribution,
  kOneForAll,
  kKernelShap,
  kUnbiasedKernelShap,
  kLeverageShap,
};

inline constexpr BaselineMethod kAllBaselines[] = {
    BaselineMethod::kPermutation,        BaselineMethod::kGroupTesting,
    BaselineMethod::kComplementContribution, BaselineMethod::kOneForAll,
    BaselineMethod::kKernelShap,         BaselineMethod::kUnbiasedKernelShap,
    BaselineMethod::kLeverageShap,
};

std::string_view to_string(BaselineMethod method);
std::optional<BaselineMethod> parse_baseline(std::string_view name);

// Smallest budget the method accepts for n players.
std::uint64_t minimum_budget(BaselineMethod method, int n);

// Evaluations the method consumes for (n, budget).
std::uint64_t predicted_evaluations(BaselineMethod method, int n, std::uint64_t budget);

// Random permutations with incremental prefixes, n+1 evaluations each
// (including U(empty)); the last permutation is cut at exactly `budget`.
SvEstimate permutation_estimator(const Game& game, std::uint64_t budget, Rng& rng,
                                 std::uint64_t checkpoint_interval = 0);

// Group testing with a dummy player n: sizes s in 1..n with
// p(s) ~ 1/s + 1/(n-s+1), S uniform over size-s subsets of the n+1 players,
// one evaluation per row, SV(i) = Z/T sum_t (B_ti - B_t,dummy).
SvEstimate group_testing_estimator(const Game& game, std::uint64_t budget, Rng& rng,
                                   std::uint64_t checkpoint_interval = 0);

// Complementary contributions U(S) - U([n] \ S), s uniform on 1..n, stratified
// by (player, size of the side containing the player). budget/2 pairs.
SvEstimate complement_contribution_estimator(const Game& game, std::uint64_t budget,
                                             Rng& rng,
                                             std::uint64_t checkpoint_interval = 0);

// 2n+2 deterministic evaluations for sizes {0, 1, n-1, n}; the rest sample
// sizes 2..n-2 with q(s) ~ 1/sqrt(s(n-s)) and reuse every sample for every
// player through in/out stratum means.
SvEstimate one_for_all_estimator(const Game& game, std::uint64_t budget, Rng& rng,
                                 std::uint64_t checkpoint_interval = 0);

// Sizes p(s) ~ 1/(s(n-s)), empirical A = mean 1_S 1_S^T and b, constrained LS.
// U(empty) and U([n]) take 2 of the budget.
SvEstimate kernelshap_estimator(const Game& game, std::uint64_t budget, Rng& rng,
                                std::uint64_t checkpoint_interval = 0);

// KernelSHAP with the exact Gram matrix: 1/2 on the diagonal and
//   1/(n(n-1)) * sum_{s=2}^{n-1} (s-1)/(n-s) / sum_{s=1}^{n-1} 1/(s(n-s))
// off it.
SvEstimate unbiased_kernelshap_estimator(const Game& game, std::uint64_t budget,
                                         Rng& rng,
                                         std::uint64_t checkpoint_interval = 0);

// Uniform sizes with paired complements, importance weight 1/(s(n-s)) on
// each pair; (budget-2)/2 pairs.
SvEstimate leverageshap_estimator(const Game& game, std::uint64_t budget, Rng& rng,
                                  std::uint64_t checkpoint_interval = 0);

SvEstimate run_baseline(BaselineMethod method, const Game& game, std::uint64_t budget,
                        Rng& rng, std::uint64_t checkpoint_interval = 0);

// Closed-form Gram matrix used by the unbiased KernelSHAP variant.
Eigen::MatrixXd kernelshap_gram(int n);

// sum_{i in group} values[i].
double group_sum(const SvEstimate& estimate, std::span<const int> group);
double group_sum(const Eigen::VectorXd& values, std::span<const int> group);

// Group-sum trajectory over the snapshots.
ConvergenceCurve group_curve(const SvEstimate& estimate, std::span<const int> group);

}  // namespace fgsv

#endif  // FGSV_BASELINES_HPP_
