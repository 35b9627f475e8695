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


#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "fgsv/baselines.hpp"
#include "fgsv/constrained_ls.hpp"
#include "fgsv/errors.hpp"
#include "fgsv/games.hpp"
#include "support/oracles.hpp"

namespace fgsv {
namespace {

// Mean and standard error of the estimate vectors over `reps` seeds.
std::pair<Eigen::VectorXd, Eigen::VectorXd> replicate(BaselineMethod method, const Game& game,
                                                      std::uint64_t budget, int reps) {
  const int n = game.size();
  Eigen::MatrixXd values(reps, n);
  for (int r = 0; r < reps; ++r) {
    Rng rng = derive_rng(900 + r, static_cast<std::uint64_t>(method));
    values.row(r) = run_baseline(method, game, budget, rng).values.transpose();
  }
  const Eigen::VectorXd mean = values.colwise().mean().transpose();
  Eigen::VectorXd se(n);
  for (int i = 0; i < n; ++i) {
    se[i] = std::sqrt((values.col(i).array() - mean[i]).square().sum() / (reps - 1) / reps);
  }
  return {mean, se};
}

TEST(Baselines, NamesRoundTrip) {
  for (BaselineMethod m : kAllBaselines) EXPECT_EQ(parse_baseline(to_string(m)), m);
  EXPECT_FALSE(parse_baseline("nonsense").has_value());
}

TEST(Baselines, PermutationAdditiveExact) {
  auto game = testing::additive_game({0.5, -1.0, 2.0, 3.5, 0.25});
  Rng rng(1);
  const SvEstimate est = permutation_estimator(*game, 6, rng);
  EXPECT_EQ(est.evaluations_used, 6u);
  EXPECT_LE((est.values - Eigen::Vector<double, 5>(0.5, -1.0, 2.0, 3.5, 0.25)).cwiseAbs().maxCoeff(),
            1e-14);
  game->reset_evaluations();
  permutation_estimator(*game, 6 * 7 + 3, rng);
  EXPECT_EQ(game->evaluations(), 45u);
  EXPECT_THROW(permutation_estimator(*game, 5, rng), DomainError);
}

TEST(Baselines, PermutationCltBand) {
  auto game = testing::sou_ptr(8, 64, 41);
  const Eigen::VectorXd truth = sou_exact_sv(*game);
  const auto [mean, se] = replicate(BaselineMethod::kPermutation, *game, 90, 200);
  for (int i = 0; i < 8; ++i) EXPECT_LE(std::abs(mean[i] - truth[i]), 4.0 * se[i]) << i;
}

TEST(Baselines, GroupTestingSingleRowAndDifferences) {
  auto game = testing::sou_ptr(8, 64, 42);
  Rng rng(2);
  game->reset_evaluations();
  const SvEstimate one = group_testing_estimator(*game, 1, rng);
  EXPECT_EQ(one.evaluations_used, 1u);
  EXPECT_EQ(game->evaluations(), 1u);
  ASSERT_TRUE(one.dummy_value.has_value());
  EXPECT_EQ(*one.dummy_value, 0.0);

  // Pairwise differences against the closed form.
  const Eigen::VectorXd truth = sou_exact_sv(*game);
  const int reps = 40;
  Eigen::MatrixXd diffs(reps, 7);
  for (int r = 0; r < reps; ++r) {
    Rng local = derive_rng(r, 77);
    const Eigen::VectorXd v = group_testing_estimator(*game, 5000, local).values;
    for (int i = 1; i < 8; ++i) diffs(r, i - 1) = v[i] - v[0];
  }
  for (int i = 1; i < 8; ++i) {
    const double mean = diffs.col(i - 1).mean();
    const double sd = std::sqrt((diffs.col(i - 1).array() - mean).square().sum() / (reps - 1));
    EXPECT_LE(std::abs(mean - (truth[i] - truth[0])), 4.0 * sd / std::sqrt(reps)) << i;
  }
}

TEST(Baselines, ComplementContribution) {
  SizeOnlyGame symmetric(6, [](int s) { return std::sqrt(s); });
  Rng rng(3);
  symmetric.reset_evaluations();
  const SvEstimate two = complement_contribution_estimator(symmetric, 2, rng);
  EXPECT_EQ(symmetric.evaluations(), 2u);
  EXPECT_EQ(two.evaluations_used, 2u);
  const SvEstimate est = complement_contribution_estimator(symmetric, 20000, rng);
  const auto [mean, se] = replicate(BaselineMethod::kComplementContribution, symmetric, 2000, 30);
  for (int i = 1; i < 6; ++i) {
    EXPECT_LE(std::abs(mean[i] - mean[0]), 4.0 * std::hypot(se[i], se[0]) + 1e-12);
  }
  EXPECT_NEAR(est.values.sum(), std::sqrt(6.0), 0.05);
}

TEST(Baselines, OneForAllExactForThreePlayers) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto game = testing::random_table_game(3, seed);
    Rng rng(seed);
    const SvEstimate est = one_for_all_estimator(*game, 8, rng);
    EXPECT_LE((est.values - testing::brute_force_sv(*game)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_EQ(est.evaluations_used, 8u);
  }
}

TEST(Baselines, RegressionEstimatorsAreEfficient) {
  auto game = testing::sou_ptr(10, 100, 12);
  const double total = game->evaluate_grand() - game->evaluate_empty();
  for (BaselineMethod m : {BaselineMethod::kKernelShap, BaselineMethod::kUnbiasedKernelShap,
                           BaselineMethod::kLeverageShap}) {
    for (std::uint64_t budget : {40u, 401u, 3000u}) {
      Rng rng(budget);
      const SvEstimate est = run_baseline(m, *game, budget, rng);
      EXPECT_NEAR(est.values.sum(), total, 1e-9) << to_string(m);
    }
  }
}

TEST(Baselines, TwoPlayers) {
  // Paired sampling draws {0} and {1} equally often, so LeverageSHAP is exact.
  // The i.i.d. variants weight the two singletons by their sample frequencies
  // f0, f1; the error is (f - 1/2) times a game constant, O(1/sqrt(T)).
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto game = testing::random_table_game(2, seed);
    const Eigen::VectorXd truth = testing::brute_force_sv(*game);
    const double empty = game->evaluate_empty();
    const double scale = std::abs(game->evaluate({0}) - empty) +
                         std::abs(game->evaluate({1}) - empty) +
                         std::abs(game->evaluate_grand() - empty);
    Rng rng(seed);
    const SvEstimate lev = leverageshap_estimator(*game, 12, rng);
    EXPECT_LE((lev.values - truth).cwiseAbs().maxCoeff(), 1e-12);
    for (BaselineMethod m : {BaselineMethod::kKernelShap, BaselineMethod::kUnbiasedKernelShap}) {
      const std::uint64_t budget = 20002;
      const SvEstimate est = run_baseline(m, *game, budget, rng);
      EXPECT_LE((est.values - truth).cwiseAbs().maxCoeff(), 5.0 * scale / (2.0 * std::sqrt(budget - 2.0)))
          << to_string(m);
    }
  }
}

TEST(Baselines, UnbiasedKernelShapGram) {
  const Eigen::MatrixXd g = kernelshap_gram(3);
  EXPECT_NEAR(g(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(g(0, 1), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(g(2, 1), 1.0 / 6.0, 1e-15);
  // Matches the population second moment of 1_S under p(s) ~ 1/(s(n-s)).
  const int n = 7;
  const Eigen::MatrixXd g7 = kernelshap_gram(n);
  double norm = 0.0, off = 0.0;
  for (int s = 1; s < n; ++s) {
    const double w = 1.0 / (s * (n - s));
    norm += w;
    off += w * s * (s - 1) / (n * (n - 1.0));
  }
  EXPECT_NEAR(g7(1, 4), off / norm, 1e-14);
}

TEST(Baselines, LeverageShapSpendsPairs) {
  auto game = testing::sou_ptr(8, 64, 1);
  Rng rng(4);
  game->reset_evaluations();
  const SvEstimate est = leverageshap_estimator(*game, 103, rng);
  EXPECT_EQ(game->evaluations(), 102u);
  EXPECT_EQ(est.evaluations_used, 102u);
}

TEST(Baselines, LargeBudgetMatchesClosedForm) {
  auto game = testing::sou_ptr(8, 64, 55);
  const Eigen::VectorXd truth = sou_exact_sv(*game);
  for (BaselineMethod m : kAllBaselines) {
    const auto [mean, se] = replicate(m, *game, 20000, 12);
    for (int i = 0; i < 8; ++i) {
      EXPECT_LE(std::abs(mean[i] - truth[i]), 4.5 * se[i] + 1e-3) << to_string(m) << " " << i;
    }
  }
}

TEST(Baselines, PredictedEvaluationsAndSnapshots) {
  auto game = testing::sou_ptr(9, 81, 6);
  for (BaselineMethod m : kAllBaselines) {
    for (std::uint64_t budget : {minimum_budget(m, 9), std::uint64_t{57}, std::uint64_t{1000}}) {
      if (budget < minimum_budget(m, 9)) continue;
      Rng rng(budget);
      game->reset_evaluations();
      const SvEstimate est = run_baseline(m, *game, budget, rng, 25);
      EXPECT_EQ(game->evaluations(), est.evaluations_used) << to_string(m);
      EXPECT_EQ(predicted_evaluations(m, 9, budget), est.evaluations_used) << to_string(m);
      EXPECT_LE(est.evaluations_used, budget);
      for (std::size_t i = 1; i < est.snapshots.size(); ++i) {
        EXPECT_GT(est.snapshots[i].evaluations, est.snapshots[i - 1].evaluations);
      }
    }
    Rng rng(0);
    if (minimum_budget(m, 9) > 1) {
      EXPECT_THROW(run_baseline(m, *game, minimum_budget(m, 9) - 1, rng), DomainError)
          << to_string(m);
    }
  }
}

TEST(Baselines, SeedDeterminism) {
  auto game = testing::sou_ptr(9, 81, 6);
  for (BaselineMethod m : kAllBaselines) {
    Rng a(17), b(17);
    EXPECT_EQ(run_baseline(m, *game, 500, a).values, run_baseline(m, *game, 500, b).values);
  }
}

TEST(Baselines, GroupSum) {
  SvEstimate est;
  est.values = Eigen::Vector3d(1.0, 2.0, 4.0);
  EXPECT_EQ(group_sum(est, IndexSet{0, 1, 2}), 7.0);
  EXPECT_EQ(group_sum(est, IndexSet{}), 0.0);
  EXPECT_EQ(group_sum(est, IndexSet{2, 0}), 5.0);
  EXPECT_THROW(group_sum(est, IndexSet{3}), DomainError);

  est.snapshots.push_back({10, Eigen::Vector3d(1, 1, 1), 0});
  est.snapshots.push_back({20, Eigen::Vector3d(2, 2, 2), 0});
  const ConvergenceCurve curve = group_curve(est, IndexSet{0, 1});
  ASSERT_EQ(curve.size(), 2u);
  EXPECT_EQ(curve.checkpoints()[1].estimate, 4.0);
  EXPECT_EQ(curve.checkpoints()[1].evaluations, 20u);
}

TEST(ConstrainedLs, IdentityCases) {
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(4, 4);
  const Eigen::VectorXd x = solve_constrained_ls(id, Eigen::VectorXd::Zero(4), 4.0);
  EXPECT_LE((x - Eigen::VectorXd::Ones(4)).cwiseAbs().maxCoeff(), 1e-15);
  const Eigen::Vector4d b(1.0, -2.0, 0.5, 3.0);
  const Eigen::VectorXd y = solve_constrained_ls(id, b, 1.0);
  const Eigen::VectorXd expected = b - Eigen::VectorXd::Constant(4, (b.sum() - 1.0) / 4.0);
  EXPECT_LE((y - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ConstrainedLs, KktResidual) {
  Rng rng(10);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::MatrixXd m(5, 5);
    for (int i = 0; i < 25; ++i) m.data()[i] = normal(rng);
    const Eigen::MatrixXd a = m * m.transpose() + 0.1 * Eigen::MatrixXd::Identity(5, 5);
    Eigen::VectorXd b(5);
    for (int i = 0; i < 5; ++i) b[i] = normal(rng);
    const Eigen::VectorXd x = solve_constrained_ls(a, b, 2.0);
    // Stationarity: A x - b = lambda 1 for a common lambda.
    const Eigen::VectorXd r = a * x - b;
    EXPECT_LE((r.array() - r.mean()).abs().maxCoeff(), 1e-10);
    EXPECT_NEAR(x.sum(), 2.0, 1e-10);
  }
}

TEST(ConstrainedLs, SingularFallsBackToRidge) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
  a(0, 0) = a(1, 1) = 1.0;
  std::vector<std::string> warnings;
  const Eigen::VectorXd x = solve_constrained_ls(a, Eigen::Vector3d(0, 0, 0), 1.0, &warnings);
  EXPECT_FALSE(warnings.empty());
  EXPECT_NEAR(x.sum(), 1.0, 1e-8);
  EXPECT_TRUE(x.allFinite());
}

}  // namespace
}  // namespace fgsv
