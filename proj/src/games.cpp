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

#include "fgsv/games.hpp"

#include <algorithm>
#include <utility>

#include <nlohmann/json.hpp>

#include "fgsv/combinatorics.hpp"
#include "fgsv/errors.hpp"
#include "fgsv/random.hpp"

namespace fgsv {

SouGame::SouGame(int n, std::vector<IndexSet> subsets, std::vector<double> coefficients,
                 std::uint64_t seed)
    : Game(n),
      subsets_(std::move(subsets)),
      coefficients_(std::move(coefficients)),
      words_((n + 63) / 64),
      seed_(seed) {
  if (subsets_.size() != coefficients_.size()) {
    throw DomainError("SOU game needs one coefficient per subset");
  }
  masks_.assign(subsets_.size() * words_, 0);
  for (std::size_t j = 0; j < subsets_.size(); ++j) {
    IndexSet& members = subsets_[j];
    if (members.empty()) throw DomainError("SOU unanimity subsets must be non-empty");
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
      throw DomainError("SOU unanimity subset has a duplicate player");
    }
    for (int i : members) {
      if (i < 0 || i >= n) throw DomainError("SOU unanimity subset player out of range");
      masks_[j * words_ + i / 64] |= std::uint64_t{1} << (i % 64);
    }
  }
}

double SouGame::utility(std::span<const int> subset) const {
  thread_local std::vector<std::uint64_t> present;
  present.assign(words_, 0);
  for (int i : subset) present[i / 64] |= std::uint64_t{1} << (i % 64);

  double total = 0.0;
  const std::uint64_t* mask = masks_.data();
  if (words_ == 1) {
    const std::uint64_t missing = ~present[0];
    for (std::size_t j = 0; j < coefficients_.size(); ++j) {
      if ((mask[j] & missing) == 0) total += coefficients_[j];
    }
    return total;
  }
  for (std::size_t j = 0; j < coefficients_.size(); ++j, mask += words_) {
    bool contained = true;
    for (int w = 0; w < words_ && contained; ++w) {
      contained = (mask[w] & ~present[w]) == 0;
    }
    if (contained) total += coefficients_[j];
  }
  return total;
}

nlohmann::json SouGame::describe() const {
  return {{"type", "sou"}, {"n", size()}, {"d", subsets_.size()}, {"seed", seed_}};
}

SouGame sou_generate(int n, int d, std::uint64_t seed) {
  if (n < 2) throw DomainError("sou_generate needs n >= 2");
  if (d < 1) throw DomainError("sou_generate needs d >= 1");
  Rng rng = derive_rng(seed, 0x50u);
  IndexSet pool = all_players(n);
  std::vector<IndexSet> subsets;
  std::vector<double> coefficients;
  subsets.reserve(d);
  coefficients.reserve(d);
  for (int j = 0; j < d; ++j) {
    const int k = uniform_int(rng, 1, n);
    partial_shuffle(pool, k, rng);
    IndexSet members(pool.begin(), pool.begin() + k);
    double weight = 0.0;
    for (int i : members) weight += static_cast<double>(i % 4) / 4.0;
    subsets.push_back(std::move(members));
    coefficients.push_back(weight / k);
  }
  return SouGame(n, std::move(subsets), std::move(coefficients), seed);
}

double sou_exact_sv(const SouGame& game, int player) {
  if (player < 0 || player >= game.size()) throw DomainError("player index out of range");
  double value = 0.0;
  const auto& subsets = game.subsets();
  const auto& coefficients = game.coefficients();
  for (std::size_t j = 0; j < subsets.size(); ++j) {
    if (std::binary_search(subsets[j].begin(), subsets[j].end(), player)) {
      value += coefficients[j] / static_cast<double>(subsets[j].size());
    }
  }
  return value;
}

Eigen::VectorXd sou_exact_sv(const SouGame& game) {
  Eigen::VectorXd values = Eigen::VectorXd::Zero(game.size());
  const auto& subsets = game.subsets();
  const auto& coefficients = game.coefficients();
  for (std::size_t j = 0; j < subsets.size(); ++j) {
    const double share = coefficients[j] / static_cast<double>(subsets[j].size());
    for (int i : subsets[j]) values[i] += share;
  }
  return values;
}

SizeOnlyGame::SizeOnlyGame(int n, ExpectedUtility ubar, std::string label)
    : Game(n), ubar_(std::move(ubar)), label_(std::move(label)) {}

double SizeOnlyGame::utility(std::span<const int> subset) const {
  return ubar_(static_cast<int>(subset.size()));
}

nlohmann::json SizeOnlyGame::describe() const {
  return {{"type", "size_only"}, {"n", size()}, {"ubar", label_}};
}

FunctionGame::FunctionGame(int n, Utility utility, std::string label)
    : Game(n), utility_(std::move(utility)), label_(std::move(label)) {}

double FunctionGame::utility(std::span<const int> subset) const { return utility_(subset); }

nlohmann::json FunctionGame::describe() const {
  return {{"type", "function"}, {"n", size()}, {"label", label_}};
}

}  // namespace fgsv
