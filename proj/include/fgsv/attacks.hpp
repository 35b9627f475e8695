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

#ifndef FGSV_ATTACKS_HPP_
#define FGSV_ATTACKS_HPP_

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fgsv/exact.hpp"
#include "fgsv/game.hpp"
#include "fgsv/games.hpp"

namespace fgsv {

struct PrudenceResult {
  bool prudent = true;
  std::optional<int> first_violation;  // smallest s with third difference <= 0
};

// Third forward difference ubar(s+3) - 3ubar(s+2) + 3ubar(s+1) - ubar(s) > 0
// for every s in 0..s_max.
PrudenceResult prudence_check(const ExpectedUtility& ubar, int s_max);

// Group-as-individual value of group k when U depends only on |S|; groups
// are represented by their sizes. At most kDefaultExactCap groups.
double expected_gsv(const ExpectedUtility& ubar, const std::vector<int>& group_sizes,
                    int k);

// Sum of members' Shapley values for a size-only utility:
// size_k * (ubar(n) - ubar(0)) / n.
double expected_fgsv(const ExpectedUtility& ubar, const std::vector<int>& group_sizes,
                     int k);

struct SplitSchedule {
  int target_group = 0;
  int pieces = 2;
};

// Even split; the remainder goes to the last pieces (100 / 3 -> 33, 33, 34).
std::vector<int> split_sizes(int size, int pieces);

// Replaces the target group by its pieces, appended at the end of the group
// list. Members are assigned in ascending index order.
Partition apply_split(const Partition& partition, const SplitSchedule& schedule);
std::vector<int> apply_split(const std::vector<int>& group_sizes,
                             const SplitSchedule& schedule);

struct AttackGroupRow {
  int pieces = 1;      // 1 = unsplit baseline
  int group = 0;       // 0-based index in the split partition
  std::string role;    // "attacker" (a shell of the target) or "other"
  int size = 0;
  double gsv = 0.0;
  double fgsv = 0.0;
};

struct AttackOutcome {
  int pieces = 1;
  double attacker_gsv = 0.0;   // summed over the target's shells
  double victim_gsv = 0.0;     // summed over all other groups
  double attacker_fgsv = 0.0;
  double victim_fgsv = 0.0;
};

struct AttackReport {
  bool prudent = false;
  std::optional<int> prudence_violation;
  std::vector<AttackOutcome> outcomes;  // first entry is the unsplit baseline
  std::vector<AttackGroupRow> rows;
  // Every split raises the attacker's total GSV strictly above the unsplit
  // value, and the totals increase with the number of pieces.
  bool gsv_inflated = false;
  bool gsv_monotone = false;
  // Attacker and victim FGSV totals identical across schedules (1e-10).
  bool fgsv_constant = false;
};

// Size-only version: GSV via expected_gsv, FGSV in closed form.
AttackReport run_attack(const ExpectedUtility& ubar, const std::vector<int>& group_sizes,
                        const std::vector<SplitSchedule>& schedules);

// General small game: exact GSV and FGSV by enumeration; n <= 16.
AttackReport run_attack(const Game& game, const Partition& partition,
                        const std::vector<SplitSchedule>& schedules);

inline constexpr int kAttackExactCap = 16;

nlohmann::json to_json(const AttackReport& report);

}  // namespace fgsv

#endif  // FGSV_ATTACKS_HPP_
