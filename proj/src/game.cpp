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

#include "fgsv/game.hpp"

#include <numeric>
#include <string>

#include <nlohmann/json.hpp>

#include "fgsv/errors.hpp"

namespace fgsv {

Game::Game(int n) : n_(n) {
  if (n < 1) throw DomainError("game needs at least one player");
}

void Game::validate(std::span<const int> subset) const {
  thread_local std::vector<unsigned char> seen;
  if (seen.size() < static_cast<std::size_t>(n_)) seen.resize(n_);
  std::size_t checked = 0;
  bool ok = true;
  std::string message;
  for (; checked < subset.size(); ++checked) {
    const int i = subset[checked];
    if (i < 0 || i >= n_) {
      message = "player index " + std::to_string(i) + " out of range [0, " +
                std::to_string(n_) + ")";
      ok = false;
      break;
    }
    if (seen[i]) {
      message = "duplicate player index " + std::to_string(i);
      ok = false;
      break;
    }
    seen[i] = 1;
  }
  for (std::size_t j = 0; j < checked; ++j) seen[subset[j]] = 0;
  if (!ok) throw DomainError(message);
}

double Game::evaluate(std::span<const int> subset) const {
  validate(subset);
  count_evaluation();
  return utility(subset);
}

double Game::evaluate_grand() const {
  const IndexSet all = all_players(n_);
  count_evaluation();
  return utility(all);
}

double Game::evaluate_empty() const {
  count_evaluation();
  return utility({});
}

nlohmann::json Game::describe() const {
  return {{"type", "game"}, {"n", n_}};
}

IndexSet all_players(int n) {
  IndexSet all(n);
  std::iota(all.begin(), all.end(), 0);
  return all;
}

IndexSet complement(int n, std::span<const int> subset) {
  std::vector<unsigned char> member(n, 0);
  for (int i : subset) {
    if (i < 0 || i >= n) throw DomainError("player index out of range");
    member[i] = 1;
  }
  IndexSet out;
  out.reserve(n - subset.size());
  for (int i = 0; i < n; ++i) {
    if (!member[i]) out.push_back(i);
  }
  return out;
}

}  // namespace fgsv
