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

#ifndef FGSV_GAMES_HPP_
#define FGSV_GAMES_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fgsv/game.hpp"

namespace fgsv {

// Sum-of-unanimity game: U(S) = sum_j coefficient_j * 1{A_j subset of S}.
//
// Each A_j is stored as packed 64-bit membership words so that the
// containment test costs ceil(n/64) word operations. U(S) is never cached.
class SouGame final : public Game {
 public:
  SouGame(int n, std::vector<IndexSet> subsets, std::vector<double> coefficients,
          std::uint64_t seed = 0);

  const std::vector<IndexSet>& subsets() const noexcept { return subsets_; }
  const std::vector<double>& coefficients() const noexcept { return coefficients_; }
  std::uint64_t seed() const noexcept { return seed_; }

  nlohmann::json describe() const override;

 protected:
  double utility(std::span<const int> subset) const override;

 private:
  std::vector<IndexSet> subsets_;
  std::vector<double> coefficients_;
  std::vector<std::uint64_t> masks_;  // subsets_.size() x words_
  int words_;
  std::uint64_t seed_;
};

// d random unanimity subsets: size uniform on 1..n, members drawn without
// replacement; coefficient_j is the mean of (i mod 4)/4 over i in A_j.
SouGame sou_generate(int n, int d, std::uint64_t seed);

// Closed-form Shapley value sum_j coefficient_j / |A_j| * 1{i in A_j}.
double sou_exact_sv(const SouGame& game, int player);
Eigen::VectorXd sou_exact_sv(const SouGame& game);

using ExpectedUtility = std::function<double(int)>;

// U(S) = ubar(|S|).
class SizeOnlyGame final : public Game {
 public:
  SizeOnlyGame(int n, ExpectedUtility ubar, std::string label = "size_only");

  double ubar(int s) const { return ubar_(s); }
  const ExpectedUtility& ubar_function() const noexcept { return ubar_; }

  nlohmann::json describe() const override;

 protected:
  double utility(std::span<const int> subset) const override;

 private:
  ExpectedUtility ubar_;
  std::string label_;
};

// Adapter for ad-hoc utilities, mostly used by tests and the axiom checker.
class FunctionGame final : public Game {
 public:
  using Utility = std::function<double(std::span<const int>)>;

  FunctionGame(int n, Utility utility, std::string label = "function");

  nlohmann::json describe() const override;

 protected:
  double utility(std::span<const int> subset) const override;

 private:
  Utility utility_;
  std::string label_;
};

}  // namespace fgsv

#endif  // FGSV_GAMES_HPP_
