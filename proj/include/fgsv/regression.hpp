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

#ifndef FGSV_REGRESSION_HPP_
#define FGSV_REGRESSION_HPP_

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fgsv/game.hpp"
#include "fgsv/random.hpp"

namespace fgsv {

struct RegressionData {
  Eigen::MatrixXd x;  // rows are observations
  Eigen::VectorXd y;
};

// A synthetic, non-informative data item: predictors of one training row
// paired with the response of another.
struct NullRecord {
  int feature_row;
  int response_row;
};

// Games that accept synthetic items on top of a real index set.
class AugmentableGame : public Game {
 public:
  using Game::Game;

  virtual std::vector<NullRecord> draw_null_records(int count, Rng& rng) const = 0;

  // U(S together with `nulls`). Counts as one evaluation.
  double evaluate_with_nulls(std::span<const int> subset,
                             std::span<const NullRecord> nulls) const;

 protected:
  virtual double utility_with_nulls(std::span<const int> subset,
                                    std::span<const NullRecord> nulls) const = 0;
};

// Ridge regression trained on the rows in S, scored by negative test MSE.
//
// U(empty) is the null utility -var(test responses), i.e. the score of the
// constant test-mean predictor. Subsets with fewer rows than predictors also
// score the null utility; wrap the game with augment_with_null to get a
// principled value for them instead.
class RegressionGame final : public AugmentableGame {
 public:
  RegressionGame(RegressionData train, RegressionData test, double lambda);

  double lambda() const noexcept { return lambda_; }
  double null_utility() const noexcept { return null_utility_; }
  int predictors() const noexcept { return static_cast<int>(train_.x.cols()); }
  const RegressionData& train() const noexcept { return train_; }
  const RegressionData& test() const noexcept { return test_; }

  std::vector<NullRecord> draw_null_records(int count, Rng& rng) const override;

  nlohmann::json describe() const override;

 protected:
  double utility(std::span<const int> subset) const override;
  double utility_with_nulls(std::span<const int> subset,
                            std::span<const NullRecord> nulls) const override;

 private:
  double score(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) const;

  RegressionData train_;
  RegressionData test_;
  double lambda_;
  double null_utility_;
};

// Pads every S with |S| < threshold by threshold - |S| fresh null records.
// Stochastic: records are redrawn on each call from a generator owned by the
// wrapper (guarded by a mutex), so U(S) is not a pure function of S.
class AugmentedGame final : public Game {
 public:
  AugmentedGame(const AugmentableGame& base, int threshold, std::uint64_t seed);

  int threshold() const noexcept { return threshold_; }
  const AugmentableGame& base() const noexcept { return base_; }

  bool deterministic() const override { return false; }
  nlohmann::json describe() const override;

 protected:
  double utility(std::span<const int> subset) const override;

 private:
  const AugmentableGame& base_;
  int threshold_;
  mutable std::mutex rng_mutex_;
  mutable Rng rng_;
};

// Throws UnsupportedError unless `game` is an AugmentableGame. The returned
// game references `game`, which must outlive it.
std::unique_ptr<Game> augment_with_null(const Game& game, int threshold,
                                        std::uint64_t seed);

// Header row, comma separated, numeric cells, last column is the response.
// The response is centred and scaled to unit variance over all rows before a
// seeded split into train/test.
RegressionGame load_regression_csv(const std::string& path, double test_fraction,
                                   double lambda, std::uint64_t seed);

// Gaussian predictors, y = x.beta + noise with beta_k = 1/(k+1).
RegressionGame make_synthetic_regression(int n_train, int n_test, int predictors,
                                         double noise, double lambda,
                                         std::uint64_t seed);

}  // namespace fgsv

#endif  // FGSV_REGRESSION_HPP_
