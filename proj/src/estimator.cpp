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

#include "fgsv/estimator.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <thread>

#include "fgsv/combinatorics.hpp"
#include "fgsv/errors.hpp"
#include "fgsv/exact.hpp"

namespace fgsv {
namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ns(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count();
}

struct MeanStat {
  double mean = 0.0;
  double variance_of_mean = 0.0;
  std::uint64_t evaluations = 0;
};

// Welford accumulator.
class RunningMean {
 public:
  void add(double x) {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }
  double mean() const { return mean_; }
  double variance_of_mean() const {
    if (count_ < 2) return 0.0;
    return m2_ / static_cast<double>(count_ - 1) / static_cast<double>(count_);
  }

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

// |A(s, s1)| when it does not exceed `limit`, else nullopt.
std::optional<std::uint64_t> family_size_up_to(int n, int s0, int s, int s1,
                                               std::uint64_t limit) {
  const double log_size = log_binom(s0, s1) + log_binom(n - s0, s - s1);
  if (log_size > std::log(static_cast<double>(limit)) + 1e-9) return std::nullopt;
  const auto size = static_cast<std::uint64_t>(std::llround(std::exp(log_size)));
  if (size > limit) return std::nullopt;
  return size;
}

std::uint64_t grid_point_cost(int n, int s0, int s, int s1, const EstimatorConfig& config) {
  if (config.exhaustive_small_s) {
    if (auto size = family_size_up_to(n, s0, s, s1, config.m1)) return *size;
  }
  return config.m1;
}

MeanStat mu_stat(const Game& game, StratifiedSampler& sampler, int s, int s1, std::uint64_t m1,
                 Rng& rng, bool exhaustive) {
  const int n = game.size();
  const int s0 = sampler.group_size();
  if (!sampler.feasible(s, s1)) {
    throw DomainError("mu estimate: infeasible configuration (s=" + std::to_string(s) +
                      ", s1=" + std::to_string(s1) + ", s0=" + std::to_string(s0) + ")");
  }
  if (m1 < 1) throw DomainError("mu estimate needs m1 >= 1");
  MeanStat stat;
  if (exhaustive) {
    if (auto size = family_size_up_to(n, s0, s, s1, m1)) {
      stat.mean = exact_mu(game, sampler.inside(), s, s1);
      stat.evaluations = *size;
      return stat;
    }
  }
  RunningMean acc;
  IndexSet subset;
  for (std::uint64_t j = 0; j < m1; ++j) {
    sampler.sample(s, s1, rng, subset);
    acc.add(game.evaluate(subset));
  }
  stat.mean = acc.mean();
  stat.variance_of_mean = acc.variance_of_mean();
  stat.evaluations = m1;
  return stat;
}

// Paired differences at size s: base of size s-1 meeting S0 in s1 players.
// `augment` pads both sides with one shared draw of threshold - s records.
MeanStat delta_stat(const Game& game, StratifiedSampler& sampler, int s, int s1,
                    std::uint64_t m2, Rng& rng, const AugmentableGame* augment = nullptr,
                    int threshold = 0) {
  if (m2 < 1) throw DomainError("paired estimate needs m2 >= 1");
  if (s < 1) throw DomainError("paired estimate needs s >= 1");
  const bool pad = augment != nullptr && s < threshold;
  RunningMean acc;
  PairedTuple tuple;
  IndexSet with_inside;
  IndexSet with_outside;
  for (std::uint64_t j = 0; j < m2; ++j) {
    sampler.sample_paired(s - 1, s1, rng, tuple);
    with_inside = tuple.subset;
    with_inside.push_back(tuple.inside);
    with_outside = tuple.subset;
    with_outside.push_back(tuple.outside);
    double diff;
    if (pad) {
      const auto nulls = augment->draw_null_records(threshold - s, rng);
      diff = augment->evaluate_with_nulls(with_inside, nulls) -
             augment->evaluate_with_nulls(with_outside, nulls);
    } else {
      diff = game.evaluate(with_inside) - game.evaluate(with_outside);
    }
    acc.add(diff);
  }
  return {acc.mean(), acc.variance_of_mean(), 2 * m2};
}

struct SizeResult {
  double term = 0.0;
  double variance = 0.0;
  std::uint64_t evaluations = 0;
  std::int64_t wall_time_ns = 0;
  std::string warning;
};

void validate_group(int n, std::span<const int> group) {
  std::vector<unsigned char> seen(n, 0);
  for (int i : group) {
    if (i < 0 || i >= n) throw DomainError("group player index out of range");
    if (seen[i]) throw DomainError("group has a duplicate player");
    seen[i] = 1;
  }
}

// Shared driver: computes T(s) for s = 1..n-1 (optionally in parallel), then
// assembles the estimate and its running-sum curve in ascending s order.
template <typename SizeFn>
FgsvEstimate run_sizes(const Game& game, std::span<const int> group,
                       const EstimatorConfig& config, SizeFn&& size_fn) {
  const int n = game.size();
  const int s0 = static_cast<int>(group.size());
  FgsvEstimate estimate;
  estimate.per_s_terms.assign(std::max(n - 1, 0), 0.0);

  const auto start = Clock::now();
  double grand_term = 0.0;
  if (s0 > 0) {
    grand_term = static_cast<double>(s0) / n * (game.evaluate_grand() - game.evaluate_empty());
    estimate.evaluations_used = 2;
  }
  const std::int64_t grand_ns = elapsed_ns(start);

  std::vector<SizeResult> sizes(std::max(n - 1, 0));
  if (s0 > 0 && s0 < n) {
    const int threads = std::clamp(config.threads, 1, std::max(n - 1, 1));
    if (threads == 1) {
      for (int s = 1; s <= n - 1; ++s) sizes[s - 1] = size_fn(s);
    } else {
      std::atomic<int> next{1};
      std::vector<std::exception_ptr> errors(threads);
      {
        std::vector<std::jthread> workers;
        for (int w = 0; w < threads; ++w) {
          workers.emplace_back([&, w] {
            try {
              for (int s = next++; s <= n - 1; s = next++) sizes[s - 1] = size_fn(s);
            } catch (...) {
              errors[w] = std::current_exception();
            }
          });
        }
      }
      for (auto& error : errors) {
        if (error) std::rethrow_exception(error);
      }
    }
  }

  double variance = 0.0;
  double value = grand_term;
  for (int s = 1; s <= n - 1; ++s) {
    const SizeResult& r = sizes[s - 1];
    estimate.per_s_terms[s - 1] = r.term;
    value += r.term;
    variance += r.variance;
    if (!r.warning.empty()) estimate.warnings.push_back(r.warning);
  }
  estimate.value = value;
  estimate.standard_error = std::sqrt(variance);

  std::uint64_t total = estimate.evaluations_used;
  for (const auto& r : sizes) total += r.evaluations;
  estimate.evaluations_used = total;

  if (config.checkpoint_interval > 0) {
    // Stage 0 is G0 (2 evaluations), stage s is T(s).
    std::uint64_t stage_end = s0 > 0 ? 2 : 0;
    double running = grand_term;
    std::int64_t running_ns = grand_ns;
    int stage = 0;
    for (std::uint64_t at = config.checkpoint_interval; at <= total;
         at += config.checkpoint_interval) {
      while (stage < n - 1 && stage_end + sizes[stage].evaluations <= at) {
        stage_end += sizes[stage].evaluations;
        running += sizes[stage].term;
        running_ns += sizes[stage].wall_time_ns;
        ++stage;
      }
      const double shown = stage_end <= at ? running : 0.0;
      estimate.curve.record(at, shown, running_ns);
    }
  }
  return estimate;
}

}  // namespace

double estimate_mu_hat(const Game& game, std::span<const int> group, int s, int s1,
                       std::uint64_t m1, Rng& rng, bool exhaustive) {
  StratifiedSampler sampler(game.size(), group);
  return mu_stat(game, sampler, s, s1, m1, rng, exhaustive).mean;
}

double estimate_delta_mu_hat(const Game& game, std::span<const int> group, int s, int s1,
                             std::uint64_t m2, Rng& rng) {
  StratifiedSampler sampler(game.size(), group);
  return delta_stat(game, sampler, s, s1, m2, rng).mean;
}

std::optional<int> paired_anchor(int n, int s0, int s) {
  if (s < 1 || s > n - 1 || s0 < 1 || s0 > n - 1) return std::nullopt;
  const int lo = std::max(0, s + s0 - n);
  const int hi = std::min(s - 1, s0 - 1);
  if (lo > hi) return std::nullopt;
  const int anchor = static_cast<int>((static_cast<long long>(s) * s0) / n);
  return std::clamp(anchor, lo, hi);
}

FgsvEstimate estimate_fgsv(const Game& game, std::span<const int> group,
                           const EstimatorConfig& config) {
  const int n = game.size();
  validate_group(n, group);
  if (config.s_bar < 1 || config.s_bar > n) {
    throw DomainError("estimator config: s_bar must lie in [1, n]");
  }
  if (config.m1 < 1 || config.m2 < 1) throw DomainError("estimator config: m1, m2 must be >= 1");

  const int s0 = static_cast<int>(group.size());
  const double alpha = static_cast<double>(s0) / n;
  const double paired_scale = static_cast<double>(n) / (n - 1) * alpha * (1.0 - alpha);

  auto size_fn = [&](int s) {
    const auto start = Clock::now();
    Rng rng = derive_rng(config.seed, static_cast<std::uint64_t>(s));
    StratifiedSampler sampler(n, group);
    SizeResult r;
    if (s < config.s_bar) {
      const auto [lo, hi] = hypergeom_support({n, s0, s});
      const double scale = static_cast<double>(n) / (n - s);
      for (int s1 = lo; s1 <= hi; ++s1) {
        const MeanStat mu = mu_stat(game, sampler, s, s1, config.m1, rng,
                                    config.exhaustive_small_s);
        const double weight =
            hypergeom_pmf({n, s0, s}, s1) * scale * (static_cast<double>(s1) / s - alpha);
        r.term += weight * mu.mean;
        r.variance += weight * weight * mu.variance_of_mean;
        r.evaluations += mu.evaluations;
      }
    } else if (const auto anchor = paired_anchor(n, s0, s)) {
      const MeanStat delta = delta_stat(game, sampler, s, *anchor, config.m2, rng);
      r.term = paired_scale * delta.mean;
      r.variance = paired_scale * paired_scale * delta.variance_of_mean;
      r.evaluations = delta.evaluations;
    } else {
      r.warning = "size " + std::to_string(s) + ": no feasible paired tuple, term set to 0";
    }
    r.wall_time_ns = elapsed_ns(start);
    return r;
  };
  return run_sizes(game, group, config, size_fn);
}

std::uint64_t predicted_evaluations(int n, int s0, const EstimatorConfig& config) {
  if (s0 <= 0) return 0;
  if (s0 >= n) return 2;
  std::uint64_t total = 2;
  for (int s = 1; s <= n - 1; ++s) {
    if (s < config.s_bar) {
      const auto [lo, hi] = hypergeom_support({n, s0, s});
      for (int s1 = lo; s1 <= hi; ++s1) total += grid_point_cost(n, s0, s, s1, config);
    } else if (paired_anchor(n, s0, s)) {
      total += 2 * config.m2;
    }
  }
  return total;
}

namespace {

std::uint64_t ceil_count(double x) {
  if (!(x > 1.0)) return 1;
  const double c = std::ceil(x * (1.0 - 1e-12));
  if (c >= static_cast<double>(std::numeric_limits<std::uint64_t>::max())) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(c);
}

}  // namespace

ParameterChoice choose_parameters(int n, int s0, double epsilon, double delta, double upsilon,
                                  std::optional<std::uint64_t> budget_cap) {
  if (!(epsilon > 0.0 && epsilon < 1.0) || !(delta > 0.0 && delta < 1.0)) {
    throw DomainError("choose_parameters: epsilon and delta must lie in (0, 1)");
  }
  if (!(upsilon > 0.0)) throw DomainError("choose_parameters: upsilon must be positive");
  if (n < 1 || s0 < 0 || s0 > n) throw DomainError("choose_parameters: need 0 <= s0 <= n");

  const double alpha = static_cast<double>(s0) / n;
  const double log_term = std::log(static_cast<double>(n) / delta);
  const double spread = alpha * (1.0 - alpha);

  ParameterChoice choice;
  EstimatorConfig& config = choice.config;
  config.s_bar = static_cast<int>(
      std::min<std::uint64_t>(ceil_count(std::pow(epsilon, -1.0 / upsilon)), n));
  config.m1 = ceil_count(std::pow(epsilon, -(2.0 + 2.0 * upsilon) / upsilon) * log_term);
  config.m2 = ceil_count(std::max(
      1.0, std::pow(epsilon, -2.0) * spread * spread * log_term * log_term * log_term));

  choice.predicted_evaluations = predicted_evaluations(n, s0, config);
  if (budget_cap && choice.predicted_evaluations > *budget_cap && choice.predicted_evaluations > 2) {
    const double factor = *budget_cap > 2
                              ? static_cast<double>(*budget_cap - 2) /
                                    static_cast<double>(choice.predicted_evaluations - 2)
                              : 0.0;
    auto deflate = [factor](std::uint64_t m) {
      return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::floor(m * factor)));
    };
    config.m1 = deflate(config.m1);
    config.m2 = deflate(config.m2);
    choice.deflation = factor;
    choice.predicted_evaluations = predicted_evaluations(n, s0, config);
  }
  return choice;
}

EstimatorConfig config_for_budget(int n, int s0, int s_bar, std::uint64_t budget) {
  EstimatorConfig config;
  config.s_bar = std::clamp(s_bar, 1, n);
  if (s0 <= 0 || s0 >= n) return config;
  std::uint64_t per_unit = 0;
  for (int s = 1; s <= n - 1; ++s) {
    if (s < config.s_bar) {
      const auto [lo, hi] = hypergeom_support({n, s0, s});
      per_unit += static_cast<std::uint64_t>(hi - lo + 1);
    } else if (paired_anchor(n, s0, s)) {
      per_unit += 2;
    }
  }
  const std::uint64_t m = per_unit == 0 || budget <= 2 ? 1 : std::max<std::uint64_t>(
                                                                 1, (budget - 2) / per_unit);
  config.m1 = m;
  config.m2 = m;
  return config;
}

FgsvEstimate estimate_fgsv_augmented(const Game& game, std::span<const int> group,
                                     int threshold, std::uint64_t m,
                                     const EstimatorConfig& config) {
  const int n = game.size();
  validate_group(n, group);
  if (threshold < 1) throw DomainError("augmentation threshold must be >= 1");
  if (m < 1) throw DomainError("augmented estimator needs m >= 1");
  const auto* augmentable = dynamic_cast<const AugmentableGame*>(&game);
  if (augmentable == nullptr && threshold > 1) {
    throw UnsupportedError(
        "estimate_fgsv_augmented: game type does not accept synthetic items");
  }

  const int s0 = static_cast<int>(group.size());
  const double alpha = static_cast<double>(s0) / n;
  const double paired_scale = static_cast<double>(n) / (n - 1) * alpha * (1.0 - alpha);

  auto size_fn = [&](int s) {
    const auto start = Clock::now();
    Rng rng = derive_rng(config.seed, static_cast<std::uint64_t>(s));
    StratifiedSampler sampler(n, group);
    SizeResult r;
    if (const auto anchor = paired_anchor(n, s0, s)) {
      const MeanStat delta = delta_stat(game, sampler, s, *anchor, m, rng, augmentable, threshold);
      r.term = paired_scale * delta.mean;
      r.variance = paired_scale * paired_scale * delta.variance_of_mean;
      r.evaluations = delta.evaluations;
    } else {
      r.warning = "size " + std::to_string(s) + ": no feasible paired tuple, term set to 0";
    }
    r.wall_time_ns = elapsed_ns(start);
    return r;
  };
  return run_sizes(game, group, config, size_fn);
}

std::uint64_t predicted_evaluations_augmented(int n, int s0, std::uint64_t m) {
  if (s0 <= 0) return 0;
  if (s0 >= n) return 2;
  std::uint64_t total = 2;
  for (int s = 1; s <= n - 1; ++s) {
    if (paired_anchor(n, s0, s)) total += 2 * m;
  }
  return total;
}

}  // namespace fgsv
