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

#ifndef FGSV_GAME_HPP_
#define FGSV_GAME_HPP_

#include <atomic>
#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace fgsv {

// 0-based player indices. Order is irrelevant to every game; duplicates are
// rejected by Game::evaluate.
using IndexSet = std::vector<int>;

// Cooperative game over players {0, ..., n-1}.
//
// evaluate() validates the index set, bumps an atomic evaluation counter and
// forwards to utility(). Implementations must be safe to evaluate from
// several threads at once; deterministic games are pure functions of S.
class Game {
 public:
  explicit Game(int n);
  virtual ~Game() = default;

  Game(const Game&) = delete;
  Game& operator=(const Game&) = delete;

  int size() const noexcept { return n_; }

  double evaluate(std::span<const int> subset) const;
  double evaluate(std::initializer_list<int> subset) const {
    return evaluate(std::span<const int>(subset.begin(), subset.size()));
  }

  // U([n]) and U(empty set); both count as one evaluation.
  double evaluate_grand() const;
  double evaluate_empty() const;

  std::uint64_t evaluations() const noexcept {
    return evaluations_.load(std::memory_order_relaxed);
  }
  void reset_evaluations() noexcept { evaluations_.store(0); }

  // False for games that draw randomness per call (augmented games).
  virtual bool deterministic() const { return true; }

  // Type tag plus parameters, enough to rebuild the game.
  virtual nlohmann::json describe() const;

 protected:
  // Called with a validated, duplicate-free subset.
  virtual double utility(std::span<const int> subset) const = 0;

  void count_evaluation() const noexcept {
    evaluations_.fetch_add(1, std::memory_order_relaxed);
  }
  void validate(std::span<const int> subset) const;

 private:
  int n_;
  mutable std::atomic<std::uint64_t> evaluations_{0};
};

IndexSet all_players(int n);

// Players of [n] not in `subset`, ascending.
IndexSet complement(int n, std::span<const int> subset);

}  // namespace fgsv

#endif  // FGSV_GAME_HPP_
