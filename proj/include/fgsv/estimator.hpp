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

#ifndef FGSV_ESTIMATOR_HPP_
#define FGSV_ESTIMATOR_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fgsv/game.hpp"
#include "fgsv/metrics.hpp"
#include "fgsv/random.hpp"
#include "fgsv/regression.hpp"

namespace fgsv {

struct EstimatorConfig {
  // Sizes s < s_bar use the grid estimator, s >= s_bar the paired one.
  int s_bar = 1;
  std::uint64_t m1 = 1;  // samples per grid point
  std::uint64_t m2 = 1;  // tuples per paired difference
  std::uint64_t seed = 0;
  // Enumerate A(s, s1) instead of sampling when |A(s, s1)| <= m1.
  bool exhaustive_small_s = false;
  // Record a checkpoint every this many evaluations; 0 disables the curve.
  std::uint64_t checkpoint_interval = 0;
  // Workers over subset sizes. Results do not depend on this.
  int threads = 1;
};

struct FgsvEstimate {
  double value = 0.0;
  // per_s_terms[s - 1] holds the estimate of T(s), s = 1..n-1.
  std::vector<double> per_s_terms;
  std::uint64_t evaluations_used = 0;
  // Monte Carlo standard error from the per-size sample variances (0 for
  // enumerated terms).
  double standard_error = 0.0;
  ConvergenceCurve curve;
  std::vector<std::string> warnings;
};

// Mean of U over m1 uniform draws from A(s, s1). With `exhaustive` and
// |A(s, s1)| <= m1 the family is enumerated instead and the exact mean is
// returned, consuming |A(s, s1)| evaluations.
double estimate_mu_hat(const Game& game, std::span<const int> group, int s, int s1,
                       std::uint64_t m1, Rng& rng, bool exhaustive = false);

// Paired estimate of mu((s1+1)/s) - mu(s1/s) at size s: the mean of
// U(B + z1) - U(B + z2) over m2 tuples where |B| = s-1, |B intersect S0| = s1,
// z1 in S0 \ B and z2 outside S0 and B. Both evaluated sets have size s, so the
// estimate is unbiased for the size-s difference. Consumes 2*m2 evaluations.
double estimate_delta_mu_hat(const Game& game, std::span<const int> group, int s, int s1,
                             std::uint64_t m2, Rng& rng);

// floor(s * s0 / n) clamped into the feasible paired range at size s, or
// nullopt when that range is empty.
std::optional<int> paired_anchor(int n, int s0, int s);

// Two-regime FGSV estimator. Sizes are processed in ascending order, each
// with its own generator derive_rng(config.seed, s).
FgsvEstimate estimate_fgsv(const Game& game, std::span<const int> group,
                           const EstimatorConfig& config);

// Exact number of utility evaluations estimate_fgsv will consume.
std::uint64_t predicted_evaluations(int n, int s0, const EstimatorConfig& config);

struct ParameterChoice {
  EstimatorConfig config;
  // m1, m2 were multiplied by this factor to respect the budget cap (1 if no
  // cap applied).
  double deflation = 1.0;
  std::uint64_t predicted_evaluations = 0;
};

// Parameter scalings for an (epsilon, delta)-approximation with all hidden
// constants equal to 1:
//   s_bar = ceil(eps^(-1/v)),
//   m1    = ceil(eps^(-(2+2v)/v) ln(n/delta)),
//   m2    = ceil(max{1, eps^-2 (a0(1-a0))^2 (ln(n/delta))^3}),  a0 = s0/n.
// s_bar is capped at n. With a budget cap, m1 and m2 are scaled down by a
// common factor (floored, at least 1).
ParameterChoice choose_parameters(int n, int s0, double epsilon, double delta,
                                  double upsilon = 1.0,
                                  std::optional<std::uint64_t> budget_cap = std::nullopt);

// Largest common m = m1 = m2 such that the run fits in `budget` evaluations.
EstimatorConfig config_for_budget(int n, int s0, int s_bar, std::uint64_t budget);

// Augmented variant: every size uses the paired estimator with m tuples; when
// the evaluated sets (size s) are smaller than `threshold` they are padded
// with threshold - s null records, one draw shared by both sides of a tuple.
// config.seed and config.checkpoint_interval are honoured; s_bar, m1 and m2
// are ignored.
FgsvEstimate estimate_fgsv_augmented(const Game& game, std::span<const int> group,
                                     int threshold, std::uint64_t m,
                                     const EstimatorConfig& config);

std::uint64_t predicted_evaluations_augmented(int n, int s0, std::uint64_t m);

}  // namespace fgsv

#endif  // FGSV_ESTIMATOR_HPP_
