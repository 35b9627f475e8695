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

#include "fgsv/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "fgsv/combinatorics.hpp"
#include "fgsv/constrained_ls.hpp"
#include "fgsv/errors.hpp"

namespace fgsv {
namespace {

using Clock = std::chrono::steady_clock;

// Counts evaluations and takes full-vector snapshots every `interval`.
class Tracker {
 public:
  Tracker(SvEstimate& out, std::uint64_t interval)
      : out_(out), interval_(interval), start_(Clock::now()) {}

  template <typename ValuesFn>
  void tick(ValuesFn&& values) {
    ++used_;
    if (interval_ > 0 && used_ % interval_ == 0) {
      const auto ns =
          std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start_).count();
      out_.snapshots.push_back({used_, values(), ns});
    }
  }
  std::uint64_t used() const { return used_; }

 private:
  SvEstimate& out_;
  std::uint64_t interval_;
  Clock::time_point start_;
  std::uint64_t used_ = 0;
};

void warn_once(SvEstimate& out, const std::string& message) {
  if (std::find(out.warnings.begin(), out.warnings.end(), message) == out.warnings.end()) {
    out.warnings.push_back(message);
  }
}

void require_budget(BaselineMethod method, int n, std::uint64_t budget) {
  const std::uint64_t minimum = minimum_budget(method, n);
  if (budget < minimum) {
    throw DomainError(std::string(to_string(method)) + ": budget " + std::to_string(budget) +
                      " is below the minimum " + std::to_string(minimum) + " for n = " +
                      std::to_string(n));
  }
}

// Uniform size-s subset of 0..n-1 taken from the front of a persistent pool.
std::span<const int> draw_subset(std::vector<int>& pool, int s, Rng& rng) {
  partial_shuffle(pool, s, rng);
  return {pool.data(), static_cast<std::size_t>(s)};
}

std::vector<int> iota_pool(int n) {
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  return pool;
}

// Distribution over sizes lo..hi with the given weights.
class SizeDistribution {
 public:
  template <typename WeightFn>
  SizeDistribution(int lo, int hi, WeightFn&& weight) : lo_(lo) {
    std::vector<double> w;
    for (int s = lo; s <= hi; ++s) w.push_back(weight(s));
    dist_ = std::discrete_distribution<int>(w.begin(), w.end());
  }
  int operator()(Rng& rng) { return lo_ + dist_(rng); }

 private:
  int lo_;
  std::discrete_distribution<int> dist_;
};

}  // namespace

std::string_view to_string(BaselineMethod method) {
  switch (method) {
    case BaselineMethod::kPermutation: return "permutation";
    case BaselineMethod::kGroupTesting: return "group_testing";
    case BaselineMethod::kComplementContribution: return "complement_contribution";
    case BaselineMethod::kOneForAll: return "one_for_all";
    case BaselineMethod::kKernelShap: return "kernelshap";
    case BaselineMethod::kUnbiasedKernelShap: return "unbiased_kernelshap";
    case BaselineMethod::kLeverageShap: return "leverageshap";
  }
  return "unknown";
}

std::optional<BaselineMethod> parse_baseline(std::string_view name) {
  for (BaselineMethod method : kAllBaselines) {
    if (to_string(method) == name) return method;
  }
  return std::nullopt;
}

std::uint64_t minimum_budget(BaselineMethod method, int n) {
  const auto un = static_cast<std::uint64_t>(n);
  switch (method) {
    case BaselineMethod::kPermutation: return un + 1;
    case BaselineMethod::kGroupTesting: return 1;
    case BaselineMethod::kComplementContribution: return 2;
    case BaselineMethod::kOneForAll: return 2 * un + 2;
    case BaselineMethod::kKernelShap:
    case BaselineMethod::kUnbiasedKernelShap: return un + 2;
    case BaselineMethod::kLeverageShap: return 4;
  }
  return 0;
}

std::uint64_t predicted_evaluations(BaselineMethod method, int n, std::uint64_t budget) {
  if (budget < minimum_budget(method, n)) return 0;
  switch (method) {
    case BaselineMethod::kPermutation:
    case BaselineMethod::kGroupTesting: return budget;
    case BaselineMethod::kComplementContribution: return 2 * (budget / 2);
    case BaselineMethod::kOneForAll:
      return n >= 4 ? budget : 2 * static_cast<std::uint64_t>(n) + 2;
    case BaselineMethod::kKernelShap:
    case BaselineMethod::kUnbiasedKernelShap: return n >= 2 ? budget : 2;
    case BaselineMethod::kLeverageShap: return n >= 2 ? 2 + 2 * ((budget - 2) / 2) : 2;
  }
  return 0;
}

SvEstimate permutation_estimator(const Game& game, std::uint64_t budget, Rng& rng,
                                 std::uint64_t checkpoint_interval) {
  const int n = game.size();
  require_budget(BaselineMethod::kPermutation, n, budget);
  SvEstimate out;
  Eigen::VectorXd sums = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(n);
  auto values = [&] {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
      if (counts[i] > 0) v[i] = sums[i] / counts[i];
    }
    return v;
  };
  Tracker tracker(out, checkpoint_interval);
  std::vector<int> order = iota_pool(n);
  while (tracker.used() < budget) {
    std::shuffle(order.begin(), order.end(), rng);
    double previous = game.evaluate_empty();
    tracker.tick(values);
    for (int j = 0; j < n && tracker.used() < budget; ++j) {
      const double current = game.evaluate({order.data(), static_cast<std::size_t>(j + 1)});
      sums[order[j]] += current - previous;
      counts[order[j]] += 1.0;
      previous = current;
      tracker.tick(values);
    }
  }
  out.values = values();
  out.evaluations_used = tracker.used();
  return out;
}

SvEstimate group_testing_estimator(const Game& game, std::uint64_t budget, Rng& rng,
                                   std::uint64_t checkpoint_interval) {
  const int n = game.size();
  require_budget(BaselineMethod::kGroupTesting, n, budget);
  SvEstimate out;
  // Player n is the dummy; sizes 1..n over n+1 players.
  SizeDistribution sizes(1, n, [n](int s) { return 1.0 / s + 1.0 / (n - s + 1); });
  double z = 0.0;
  for (int s = 1; s <= n; ++s) z += 1.0 / s + 1.0 / (n - s + 1);

  Eigen::VectorXd column = Eigen::VectorXd::Zero(n + 1);
  std::uint64_t rows = 0;
  auto values = [&] {
    if (rows == 0) return Eigen::VectorXd::Zero(n).eval();
    return ((z / static_cast<double>(rows)) *
            (column.head(n).array() - column[n]).matrix()).eval();
  };
  Tracker tracker(out, checkpoint_interval);
  std::vector<int> pool = iota_pool(n + 1);
  IndexSet real;
  while (tracker.used() < budget) {
    const auto subset = draw_subset(pool, sizes(rng), rng);
    real.clear();
    for (int i : subset) {
      if (i != n) real.push_back(i);
    }
    const double u = game.evaluate(real);
    for (int i : subset) column[i] += u;
    ++rows;
    tracker.tick(values);
  }
  out.values = values();
  // The dummy's own difference column is identically zero.
  out.dummy_value = 0.0;
  out.evaluations_used = tracker.used();
  return out;
}

SvEstimate complement_contribution_estimator(const Game& game, std::uint64_t budget,
                                             Rng& rng, std::uint64_t checkpoint_interval) {
  const int n = game.size();
  require_budget(BaselineMethod::kComplementContribution, n, budget);
  SvEstimate out;
  // Stratum (i, k): the side containing i has size k, k = 1..n.
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(n, n);
  auto values = [&] {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        if (counts(i, k) > 0) v[i] += sums(i, k) / counts(i, k);
      }
    }
    return (v / n).eval();
  };
  Tracker tracker(out, checkpoint_interval);
  std::vector<int> pool = iota_pool(n);
  std::vector<unsigned char> in_subset(n);
  const std::uint64_t pairs = budget / 2;
  for (std::uint64_t t = 0; t < pairs; ++t) {
    const int s = uniform_int(rng, 1, n);
    partial_shuffle(pool, s, rng);
    const std::span<const int> subset(pool.data(), s);
    const std::span<const int> rest(pool.data() + s, n - s);
    const double u_subset = game.evaluate(subset);
    tracker.tick(values);
    const double u_rest = game.evaluate(rest);
    const double v = u_subset - u_rest;
    for (int i : subset) {
      sums(i, s - 1) += v;
      counts(i, s - 1) += 1.0;
    }
    for (int i : rest) {
      sums(i, n - s - 1) -= v;
      counts(i, n - s - 1) += 1.0;
    }
    tracker.tick(values);
  }
  const auto empty = (counts.array() == 0.0).count();
  if (empty > 0) {
    warn_once(out, std::to_string(empty) + " (player, size) strata had no samples and count as 0");
  }
  out.values = values();
  out.evaluations_used = tracker.used();
  return out;
}

SvEstimate one_for_all_estimator(const Game& game, std::uint64_t budget, Rng& rng,
                                 std::uint64_t checkpoint_interval) {
  const int n = game.size();
  require_budget(BaselineMethod::kOneForAll, n, budget);
  SvEstimate out;
  Tracker tracker(out, checkpoint_interval);

  const double u_empty = game.evaluate_empty();
  Eigen::VectorXd single = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd leave_out = Eigen::VectorXd::Zero(n);
  double u_grand = 0.0;
  bool deterministic_done = false;

  // Sampled strata, sizes 2..n-2 at column s: in-sums per player and totals.
  Eigen::MatrixXd in_sum = Eigen::MatrixXd::Zero(n, std::max(n, 1));
  Eigen::MatrixXd in_count = Eigen::MatrixXd::Zero(n, std::max(n, 1));
  std::vector<double> size_sum(std::max(n, 1), 0.0);
  std::vector<double> size_count(std::max(n, 1), 0.0);
  bool empty_side = false;

  auto values = [&] {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    if (!deterministic_done) return v;
    const double single_total = single.sum();
    const double leave_out_total = leave_out.sum();
    empty_side = false;
    for (int i = 0; i < n; ++i) {
      double acc = u_grand - u_empty;
      for (int s = 1; s <= n - 1; ++s) {
        if (s == 1) {
          acc += single[i] - (single_total - single[i]) / (n - 1);
        } else if (s == n - 1) {
          acc += (leave_out_total - leave_out[i]) / (n - 1) - leave_out[i];
        } else {
          const double cin = in_count(i, s);
          const double cout = size_count[s] - cin;
          if (cin > 0 && cout > 0) {
            acc += in_sum(i, s) / cin - (size_sum[s] - in_sum(i, s)) / cout;
          } else {
            empty_side = true;
          }
        }
      }
      v[i] = acc / n;
    }
    return v;
  };

  tracker.tick(values);
  std::vector<int> others;
  for (int i = 0; i < n; ++i) {
    const int player[] = {i};
    single[i] = game.evaluate(player);
    tracker.tick(values);
  }
  for (int i = 0; i < n; ++i) {
    others = complement(n, std::span<const int>(&i, 1));
    leave_out[i] = game.evaluate(others);
    tracker.tick(values);
  }
  u_grand = game.evaluate_grand();
  deterministic_done = true;
  tracker.tick(values);

  if (n >= 4) {
    SizeDistribution sizes(2, n - 2, [n](int s) { return 1.0 / std::sqrt(double(s) * (n - s)); });
    std::vector<int> pool = iota_pool(n);
    while (tracker.used() < budget) {
      const int s = sizes(rng);
      const auto subset = draw_subset(pool, s, rng);
      const double u = game.evaluate(subset);
      size_sum[s] += u;
      size_count[s] += 1.0;
      for (int i : subset) {
        in_sum(i, s) += u;
        in_count(i, s) += 1.0;
      }
      tracker.tick(values);
    }
  }
  out.values = values();
  if (empty_side) warn_once(out, "some (player, size) strata had an empty side and count as 0");
  out.evaluations_used = tracker.used();
  return out;
}

namespace {

double kernel_total(const Game& game, Tracker& tracker, double& u_empty,
                    const std::function<Eigen::VectorXd()>& values) {
  u_empty = game.evaluate_empty();
  tracker.tick(values);
  const double u_grand = game.evaluate_grand();
  return u_grand;
}

}  // namespace

Eigen::MatrixXd kernelshap_gram(int n) {
  if (n < 1) throw DomainError("kernelshap_gram: n must be positive");
  double off = 0.0;
  if (n >= 3) {
    double numerator = 0.0;
    double denominator = 0.0;
    for (int s = 2; s <= n - 1; ++s) numerator += double(s - 1) / (n - s);
    for (int s = 1; s <= n - 1; ++s) denominator += 1.0 / (double(s) * (n - s));
    off = numerator / denominator / (double(n) * (n - 1));
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Constant(n, n, off);
  a.diagonal().setConstant(0.5);
  return a;
}

namespace {

enum class GramMode { kEmpirical, kExact };

SvEstimate kernel_regression(BaselineMethod method, GramMode mode, const Game& game,
                             std::uint64_t budget, Rng& rng, std::uint64_t checkpoint_interval) {
  const int n = game.size();
  require_budget(method, n, budget);
  SvEstimate out;
  Tracker tracker(out, checkpoint_interval);
  double u_empty = 0.0;
  double total = 0.0;
  bool ready = false;
  Eigen::MatrixXd a_sum = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd b_sum = Eigen::VectorXd::Zero(n);
  std::uint64_t samples = 0;
  const Eigen::MatrixXd exact_gram = mode == GramMode::kExact && n >= 2
                                         ? kernelshap_gram(n)
                                         : Eigen::MatrixXd();
  if (mode == GramMode::kExact && n < 3) {
    warn_once(out, "n < 3: off-diagonal Gram entries set to 0");
  }
  std::function<Eigen::VectorXd()> values = [&]() -> Eigen::VectorXd {
    if (!ready) return Eigen::VectorXd::Zero(n);
    if (n == 1) return Eigen::VectorXd::Constant(1, total);
    if (samples == 0) return Eigen::VectorXd::Constant(n, total / n);
    const double scale = 1.0 / static_cast<double>(samples);
    const Eigen::MatrixXd a = mode == GramMode::kExact ? exact_gram : (a_sum * scale).eval();
    return solve_constrained_ls(a, b_sum * scale, total, &out.warnings);
  };

  const double u_grand = kernel_total(game, tracker, u_empty, values);
  total = u_grand - u_empty;
  ready = true;
  tracker.tick(values);

  if (n >= 2) {
    SizeDistribution sizes(1, n - 1, [n](int s) { return 1.0 / (double(s) * (n - s)); });
    std::vector<int> pool = iota_pool(n);
    while (tracker.used() < budget) {
      const auto subset = draw_subset(pool, sizes(rng), rng);
      const double centred = game.evaluate(subset) - u_empty;
      for (int i : subset) {
        b_sum[i] += centred;
        if (mode == GramMode::kEmpirical) {
          for (int j : subset) a_sum(i, j) += 1.0;
        }
      }
      ++samples;
      tracker.tick(values);
    }
  }
  out.values = values();
  std::sort(out.warnings.begin(), out.warnings.end());
  out.warnings.erase(std::unique(out.warnings.begin(), out.warnings.end()), out.warnings.end());
  out.evaluations_used = tracker.used();
  return out;
}

}  // namespace

SvEstimate kernelshap_estimator(const Game& game, std::uint64_t budget, Rng& rng,
                                std::uint64_t checkpoint_interval) {
  return kernel_regression(BaselineMethod::kKernelShap, GramMode::kEmpirical, game, budget, rng,
                           checkpoint_interval);
}

SvEstimate unbiased_kernelshap_estimator(const Game& game, std::uint64_t budget, Rng& rng,
                                         std::uint64_t checkpoint_interval) {
  return kernel_regression(BaselineMethod::kUnbiasedKernelShap, GramMode::kExact, game, budget,
                           rng, checkpoint_interval);
}

SvEstimate leverageshap_estimator(const Game& game, std::uint64_t budget, Rng& rng,
                                  std::uint64_t checkpoint_interval) {
  const int n = game.size();
  require_budget(BaselineMethod::kLeverageShap, n, budget);
  SvEstimate out;
  Tracker tracker(out, checkpoint_interval);
  double u_empty = 0.0;
  double total = 0.0;
  bool ready = false;
  Eigen::MatrixXd a_sum = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd b_sum = Eigen::VectorXd::Zero(n);
  std::uint64_t pairs = 0;
  std::function<Eigen::VectorXd()> values = [&]() -> Eigen::VectorXd {
    if (!ready) return Eigen::VectorXd::Zero(n);
    if (n == 1) return Eigen::VectorXd::Constant(1, total);
    if (pairs == 0) return Eigen::VectorXd::Constant(n, total / n);
    return solve_constrained_ls(a_sum, b_sum, total, &out.warnings);
  };

  const double u_grand = kernel_total(game, tracker, u_empty, values);
  total = u_grand - u_empty;
  ready = true;
  tracker.tick(values);

  if (n >= 2) {
    std::vector<int> pool = iota_pool(n);
    auto accumulate = [&](std::span<const int> side, double weight, double centred) {
      for (int i : side) {
        b_sum[i] += weight * centred;
        for (int j : side) a_sum(i, j) += weight;
      }
    };
    const std::uint64_t target = 2 + 2 * ((budget - 2) / 2);
    while (tracker.used() < target) {
      const int s = uniform_int(rng, 1, n - 1);
      partial_shuffle(pool, s, rng);
      const std::span<const int> subset(pool.data(), s);
      const std::span<const int> rest(pool.data() + s, n - s);
      // Uniform sizes reweighted to the kernel distribution 1/(s(n-s)).
      const double weight = 1.0 / (double(s) * (n - s));
      const double u_subset = game.evaluate(subset) - u_empty;
      tracker.tick(values);
      const double u_rest = game.evaluate(rest) - u_empty;
      accumulate(subset, weight, u_subset);
      accumulate(rest, weight, u_rest);
      ++pairs;
      tracker.tick(values);
    }
  }
  out.values = values();
  std::sort(out.warnings.begin(), out.warnings.end());
  out.warnings.erase(std::unique(out.warnings.begin(), out.warnings.end()), out.warnings.end());
  out.evaluations_used = tracker.used();
  return out;
}

SvEstimate run_baseline(BaselineMethod method, const Game& game, std::uint64_t budget,
                        Rng& rng, std::uint64_t checkpoint_interval) {
  switch (method) {
    case BaselineMethod::kPermutation:
      return permutation_estimator(game, budget, rng, checkpoint_interval);
    case BaselineMethod::kGroupTesting:
      return group_testing_estimator(game, budget, rng, checkpoint_interval);
    case BaselineMethod::kComplementContribution:
      return complement_contribution_estimator(game, budget, rng, checkpoint_interval);
    case BaselineMethod::kOneForAll:
      return one_for_all_estimator(game, budget, rng, checkpoint_interval);
    case BaselineMethod::kKernelShap:
      return kernelshap_estimator(game, budget, rng, checkpoint_interval);
    case BaselineMethod::kUnbiasedKernelShap:
      return unbiased_kernelshap_estimator(game, budget, rng, checkpoint_interval);
    case BaselineMethod::kLeverageShap:
      return leverageshap_estimator(game, budget, rng, checkpoint_interval);
  }
  throw DomainError("unknown baseline method");
}

double group_sum(const Eigen::VectorXd& values, std::span<const int> group) {
  double total = 0.0;
  for (int i : group) {
    if (i < 0 || i >= values.size()) throw DomainError("group_sum: player index out of range");
    total += values[i];
  }
  return total;
}

double group_sum(const SvEstimate& estimate, std::span<const int> group) {
  return group_sum(estimate.values, group);
}

ConvergenceCurve group_curve(const SvEstimate& estimate, std::span<const int> group) {
  ConvergenceCurve curve;
  for (const auto& snapshot : estimate.snapshots) {
    curve.record(snapshot.evaluations, group_sum(snapshot.values, group),
                 snapshot.wall_time_ns);
  }
  return curve;
}

}  // namespace fgsv
