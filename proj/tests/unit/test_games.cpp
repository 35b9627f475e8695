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
#include <filesystem>
#include <fstream>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "fgsv/errors.hpp"
#include "fgsv/games.hpp"
#include "fgsv/regression.hpp"
#include "support/oracles.hpp"

namespace fgsv {
namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("fgsv_games_" + name);
  std::ofstream(path) << body;
  return path;
}

TEST(Games, SizeOnlyEvaluate) {
  SizeOnlyGame game(4, [](int s) { return static_cast<double>(s); });
  EXPECT_EQ(game.evaluate({0, 2}), 2.0);
  EXPECT_EQ(game.evaluate_empty(), 0.0);
  EXPECT_EQ(game.evaluate_grand(), 4.0);
  EXPECT_EQ(game.evaluations(), 3u);
}

TEST(Games, SouUnanimity) {
  SouGame game(3, {{0, 1}}, {1.0});
  EXPECT_EQ(game.evaluate({0, 1, 2}), 1.0);
  EXPECT_EQ(game.evaluate({0}), 0.0);
  EXPECT_EQ(game.evaluate({1, 0}), 1.0);
}

TEST(Games, EvaluateRejectsBadSets) {
  SouGame game(3, {{0, 1}}, {1.0});
  EXPECT_THROW(game.evaluate({3}), DomainError);
  EXPECT_THROW(game.evaluate({-1}), DomainError);
  EXPECT_THROW(game.evaluate({1, 1}), DomainError);
  EXPECT_THROW(SouGame(3, {{0, 5}}, {1.0}), DomainError);
  EXPECT_THROW(SouGame(3, {{0}}, {1.0, 2.0}), DomainError);
}

TEST(Games, EvaluateIsPure) {
  auto game = testing::sou_ptr(12, 144, 7);
  const IndexSet s{1, 4, 5, 9};
  const double first = game->evaluate(s);
  for (int r = 0; r < 10; ++r) EXPECT_EQ(game->evaluate(s), first);
}

TEST(Games, CounterIsExactAcrossThreads) {
  auto game = testing::sou_ptr(10, 100, 3);
  {
    std::vector<std::jthread> workers;
    for (int t = 0; t < 4; ++t) {
      workers.emplace_back([&game] {
        for (int r = 0; r < 2500; ++r) game->evaluate({0, 1, 2});
      });
    }
  }
  EXPECT_EQ(game->evaluations(), 10000u);
  game->reset_evaluations();
  EXPECT_EQ(game->evaluations(), 0u);
}

TEST(Games, SouGenerateRanges) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SouGame game = sou_generate(4, 1, seed);
    ASSERT_EQ(game.subsets().size(), 1u);
    EXPECT_GE(game.subsets()[0].size(), 1u);
    EXPECT_LE(game.subsets()[0].size(), 4u);
    EXPECT_GE(game.coefficients()[0], 0.0);
    EXPECT_LE(game.coefficients()[0], 0.75);
  }
  const SouGame big = sou_generate(64, 4096, 11);
  EXPECT_EQ(big.subsets().size(), 4096u);
}

TEST(Games, SouGenerateDeterministic) {
  const SouGame a = sou_generate(16, 256, 42);
  const SouGame b = sou_generate(16, 256, 42);
  EXPECT_EQ(a.subsets(), b.subsets());
  EXPECT_EQ(a.coefficients(), b.coefficients());
  const SouGame c = sou_generate(16, 256, 43);
  EXPECT_NE(a.subsets(), c.subsets());
}

TEST(Games, SouClosedFormExamples) {
  SouGame game(3, {{0, 1}}, {1.0});
  EXPECT_DOUBLE_EQ(sou_exact_sv(game, 0), 0.5);
  EXPECT_DOUBLE_EQ(sou_exact_sv(game, 2), 0.0);
  SouGame two(2, {{0}, {0, 1}}, {0.5, 1.0});
  EXPECT_DOUBLE_EQ(sou_exact_sv(two, 0), 1.0);
  EXPECT_NEAR(testing::brute_force_sv(two)[0], 1.0, 1e-14);
}

TEST(Games, SouClosedFormMatchesBruteForce) {
  for (int n = 2; n <= 10; ++n) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      auto game = testing::sou_ptr(n, n * n, 100 * n + seed);
      const Eigen::VectorXd closed = sou_exact_sv(*game);
      const Eigen::VectorXd brute = testing::brute_force_sv(*game);
      EXPECT_LE((closed - brute).cwiseAbs().maxCoeff(), 1e-12) << "n=" << n;
      // efficiency
      EXPECT_NEAR(closed.sum(), game->evaluate_grand() - game->evaluate_empty(), 1e-12);
    }
  }
}

TEST(Games, AugmentNoOpAboveThreshold) {
  const RegressionGame base = make_synthetic_regression(12, 30, 3, 0.5, 1e-3, 5);
  auto wrapped = augment_with_null(base, 4, 9);
  EXPECT_FALSE(wrapped->deterministic());
  const IndexSet s{0, 3, 5, 7};
  EXPECT_EQ(wrapped->evaluate(s), base.evaluate(s));
  const IndexSet t{0, 1, 2, 3, 4, 5, 6};
  EXPECT_EQ(wrapped->evaluate(t), base.evaluate(t));
}

TEST(Games, AugmentThresholdOneTouchesOnlyEmptySet) {
  // One predictor, so a single null record is enough to fit a model.
  const RegressionGame base = make_synthetic_regression(12, 30, 1, 0.5, 1e-3, 5);
  auto wrapped = augment_with_null(base, 1, 9);
  EXPECT_EQ(wrapped->evaluate({2}), base.evaluate({2}));
  // The empty set gets a null record, so it differs from the plain null utility.
  double spread = 0.0;
  const double first = wrapped->evaluate_empty();
  for (int r = 0; r < 20; ++r) spread = std::max(spread, std::abs(wrapped->evaluate_empty() - first));
  EXPECT_GT(spread, 0.0);
}

TEST(Games, AugmentedEmptySetNearNullUtility) {
  const RegressionGame base = make_synthetic_regression(40, 60, 3, 1.0, 1e-2, 21);
  const int draws = 200;
  auto stats = [&](std::uint64_t seed) {
    auto wrapped = augment_with_null(base, 5, seed);
    double sum = 0.0, sq = 0.0;
    for (int r = 0; r < draws; ++r) {
      const double v = wrapped->evaluate_empty();
      EXPECT_TRUE(std::isfinite(v));
      sum += v;
      sq += v * v;
    }
    const double mean = sum / draws;
    return std::pair{mean, (sq - draws * mean * mean) / (draws - 1)};
  };
  const auto [ref_mean, ref_var] = stats(1);
  const auto [mean, var] = stats(2);
  EXPECT_LE(std::abs(mean - ref_mean), 3.0 * std::sqrt(var / draws + ref_var / draws));
}

TEST(Games, AugmentUnsupported) {
  SouGame game(3, {{0, 1}}, {1.0});
  EXPECT_THROW(augment_with_null(game, 2, 0), UnsupportedError);
  SizeOnlyGame size_only(3, [](int s) { return 1.0 * s; });
  EXPECT_THROW(augment_with_null(size_only, 1, 0), UnsupportedError);
}

TEST(Games, LoadRegressionSplit) {
  const auto path = write_temp("four.csv", "x,y\n1,2\n2,3.5\n3,5\n4,8\n");
  const RegressionGame game = load_regression_csv(path.string(), 0.5, 0.1, 3);
  EXPECT_EQ(game.size(), 2);
  EXPECT_EQ(game.test().y.size(), 2);
  EXPECT_EQ(game.predictors(), 1);
  EXPECT_LT(game.null_utility(), 0.0);
  EXPECT_EQ(game.evaluate_empty(), game.null_utility());
}

TEST(Games, LoadRegressionConstantResponse) {
  const auto path = write_temp("const.csv", "a,b,y\n1,0,5\n2,1,5\n3,0,5\n4,1,5\n5,0,5\n6,1,5\n");
  const RegressionGame game = load_regression_csv(path.string(), 0.5, 0.1, 3);
  EXPECT_EQ(game.null_utility(), 0.0);
}

TEST(Games, LoadRegressionErrors) {
  EXPECT_THROW(load_regression_csv("/nonexistent/fgsv.csv", 0.5, 0.1, 0), DataError);
  const auto ragged = write_temp("ragged.csv", "x,y\n1,2\n3\n4,5\n6,7\n");
  EXPECT_THROW(load_regression_csv(ragged.string(), 0.5, 0.1, 0), DataError);
  const auto text = write_temp("text.csv", "x,y\n1,2\nabc,3\n4,5\n6,7\n");
  EXPECT_THROW(load_regression_csv(text.string(), 0.5, 0.1, 0), DataError);
  const auto tiny = write_temp("tiny.csv", "x,y\n1,2\n3,4\n");
  EXPECT_THROW(load_regression_csv(tiny.string(), 0.5, 0.1, 0), DataError);
}

TEST(Games, RegressionMoreDataHelps) {
  const RegressionGame game = make_synthetic_regression(60, 200, 3, 0.3, 1e-3, 8);
  const IndexSet all = all_players(60);
  EXPECT_GT(game.evaluate(all), game.null_utility());
  EXPECT_GT(game.evaluate(all), -0.5);
}

}  // namespace
}  // namespace fgsv
