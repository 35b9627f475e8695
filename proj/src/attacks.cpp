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

#include "fgsv/attacks.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include "fgsv/errors.hpp"

namespace fgsv {
namespace {

constexpr double kFgsvTolerance = 1e-10;
constexpr double kInflationMargin = 1e-12;

void validate_schedule(const std::vector<int>& sizes, const SplitSchedule& schedule) {
  if (schedule.target_group < 0 || schedule.target_group >= static_cast<int>(sizes.size())) {
    throw DomainError("split schedule: target group out of range");
  }
  if (schedule.pieces < 2) throw DomainError("split schedule: pieces must be >= 2");
  if (schedule.pieces > sizes[schedule.target_group]) {
    throw DomainError("split schedule: " + std::to_string(schedule.pieces) +
                      " pieces exceed the target group's size " +
                      std::to_string(sizes[schedule.target_group]));
  }
}

// Per-schedule group values; attacker groups are the last `pieces` entries
// (all groups after the unsplit ones), or the target itself for pieces = 1.
struct Evaluated {
  std::vector<int> sizes;
  std::vector<double> gsv;
  std::vector<double> fgsv;
};

void summarise(AttackReport& report, int pieces, int target, const Evaluated& e) {
  AttackOutcome outcome;
  outcome.pieces = pieces;
  const int groups = static_cast<int>(e.sizes.size());
  for (int g = 0; g < groups; ++g) {
    const bool attacker = pieces == 1 ? g == target : g >= groups - pieces;
    AttackGroupRow row{pieces, g, attacker ? "attacker" : "other", e.sizes[g], e.gsv[g],
                       e.fgsv[g]};
    report.rows.push_back(row);
    (attacker ? outcome.attacker_gsv : outcome.victim_gsv) += e.gsv[g];
    (attacker ? outcome.attacker_fgsv : outcome.victim_fgsv) += e.fgsv[g];
  }
  report.outcomes.push_back(outcome);
}

void finish(AttackReport& report) {
  const AttackOutcome& base = report.outcomes.front();
  report.gsv_inflated = report.outcomes.size() > 1;
  report.gsv_monotone = true;
  report.fgsv_constant = true;
  for (std::size_t i = 1; i < report.outcomes.size(); ++i) {
    const AttackOutcome& o = report.outcomes[i];
    if (!(o.attacker_gsv > base.attacker_gsv + kInflationMargin)) report.gsv_inflated = false;
    if (std::abs(o.attacker_fgsv - base.attacker_fgsv) > kFgsvTolerance ||
        std::abs(o.victim_fgsv - base.victim_fgsv) > kFgsvTolerance) {
      report.fgsv_constant = false;
    }
  }
  // Totals must increase along schedules ordered by pieces.
  std::vector<AttackOutcome> ordered(report.outcomes.begin(), report.outcomes.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.pieces < b.pieces; });
  for (std::size_t i = 1; i < ordered.size(); ++i) {
    if (ordered[i].pieces == ordered[i - 1].pieces ||
        !(ordered[i].attacker_gsv > ordered[i - 1].attacker_gsv + kInflationMargin)) {
      report.gsv_monotone = false;
    }
  }
}

}  // namespace

PrudenceResult prudence_check(const ExpectedUtility& ubar, int s_max) {
  PrudenceResult result;
  for (int s = 0; s <= s_max; ++s) {
    const double third = ubar(s + 3) - 3.0 * ubar(s + 2) + 3.0 * ubar(s + 1) - ubar(s);
    if (!(third > 0.0)) {
      result.prudent = false;
      result.first_violation = s;
      break;
    }
  }
  return result;
}

double expected_gsv(const ExpectedUtility& ubar, const std::vector<int>& group_sizes, int k) {
  const int groups = static_cast<int>(group_sizes.size());
  if (k < 0 || k >= groups) throw DomainError("expected_gsv: group index out of range");
  if (groups > kDefaultExactCap) {
    throw DomainError("expected_gsv: more than " + std::to_string(kDefaultExactCap) + " groups");
  }
  for (int size : group_sizes) {
    if (size < 1) throw DomainError("expected_gsv: group sizes must be >= 1");
  }
  std::vector<int> others;
  for (int g = 0; g < groups; ++g) {
    if (g != k) others.push_back(group_sizes[g]);
  }
  const int m = static_cast<int>(others.size());
  // weight(j) = j! (m - j)! / (m + 1)!
  std::vector<double> weight(m + 1);
  for (int j = 0; j <= m; ++j) {
    weight[j] = std::exp(std::lgamma(j + 1.0) + std::lgamma(m - j + 1.0) - std::lgamma(m + 2.0));
  }
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    int joined = 0;
    for (int j = 0; j < m; ++j) {
      if (mask & (1u << j)) joined += others[j];
    }
    const int count = std::popcount(mask);
    total += weight[count] * (ubar(joined + group_sizes[k]) - ubar(joined));
  }
  return total;
}

double expected_fgsv(const ExpectedUtility& ubar, const std::vector<int>& group_sizes, int k) {
  if (k < 0 || k >= static_cast<int>(group_sizes.size())) {
    throw DomainError("expected_fgsv: group index out of range");
  }
  int n = 0;
  for (int size : group_sizes) n += size;
  if (n == 0) return 0.0;
  return group_sizes[k] * (ubar(n) - ubar(0)) / n;
}

std::vector<int> split_sizes(int size, int pieces) {
  if (pieces < 1 || pieces > size) {
    throw DomainError("split_sizes: need 1 <= pieces <= size");
  }
  std::vector<int> out(pieces, size / pieces);
  const int remainder = size % pieces;
  for (int j = pieces - remainder; j < pieces; ++j) ++out[j];
  return out;
}

std::vector<int> apply_split(const std::vector<int>& group_sizes, const SplitSchedule& schedule) {
  validate_schedule(group_sizes, schedule);
  std::vector<int> out;
  for (int g = 0; g < static_cast<int>(group_sizes.size()); ++g) {
    if (g != schedule.target_group) out.push_back(group_sizes[g]);
  }
  for (int piece : split_sizes(group_sizes[schedule.target_group], schedule.pieces)) {
    out.push_back(piece);
  }
  return out;
}

Partition apply_split(const Partition& partition, const SplitSchedule& schedule) {
  std::vector<int> sizes;
  for (const auto& g : partition.groups()) sizes.push_back(static_cast<int>(g.size()));
  validate_schedule(sizes, schedule);
  std::vector<IndexSet> groups;
  for (int g = 0; g < partition.size(); ++g) {
    if (g != schedule.target_group) groups.push_back(partition.group(g));
  }
  IndexSet members = partition.group(schedule.target_group);
  std::sort(members.begin(), members.end());
  std::size_t next = 0;
  for (int piece : split_sizes(static_cast<int>(members.size()), schedule.pieces)) {
    groups.emplace_back(members.begin() + next, members.begin() + next + piece);
    next += piece;
  }
  return Partition(partition.players(), std::move(groups));
}

AttackReport run_attack(const ExpectedUtility& ubar, const std::vector<int>& group_sizes,
                        const std::vector<SplitSchedule>& schedules) {
  if (group_sizes.empty()) throw DomainError("run_attack: no groups");
  int n = 0;
  for (int size : group_sizes) n += size;
  AttackReport report;
  const PrudenceResult prudence = prudence_check(ubar, n - 3);
  report.prudent = prudence.prudent;
  report.prudence_violation = prudence.first_violation;

  auto evaluate = [&](const std::vector<int>& sizes) {
    Evaluated e{sizes, {}, {}};
    for (int g = 0; g < static_cast<int>(sizes.size()); ++g) {
      e.gsv.push_back(expected_gsv(ubar, sizes, g));
      e.fgsv.push_back(expected_fgsv(ubar, sizes, g));
    }
    return e;
  };
  const int target = schedules.empty() ? 0 : schedules.front().target_group;
  summarise(report, 1, target, evaluate(group_sizes));
  for (const auto& schedule : schedules) {
    if (schedule.target_group != target) {
      throw DomainError("run_attack: all schedules must target the same group");
    }
    summarise(report, schedule.pieces, target, evaluate(apply_split(group_sizes, schedule)));
  }
  finish(report);
  return report;
}

AttackReport run_attack(const Game& game, const Partition& partition,
                        const std::vector<SplitSchedule>& schedules) {
  const int n = game.size();
  if (n > kAttackExactCap) {
    throw DomainError("run_attack: exact attack comparison limited to n <= " +
                      std::to_string(kAttackExactCap));
  }
  if (partition.players() != n) throw DomainError("run_attack: partition does not match game");
  AttackReport report;

  // Prudence is checked on the size-averaged utility.
  std::vector<double> mean_by_size(n + 1, 0.0);
  std::vector<double> count_by_size(n + 1, 0.0);
  IndexSet subset;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    subset.clear();
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) subset.push_back(i);
    }
    mean_by_size[subset.size()] += game.evaluate(subset);
    count_by_size[subset.size()] += 1.0;
  }
  for (int s = 0; s <= n; ++s) mean_by_size[s] /= count_by_size[s];
  const PrudenceResult prudence =
      prudence_check([&](int s) { return mean_by_size.at(s); }, n - 3);
  report.prudent = prudence.prudent;
  report.prudence_violation = prudence.first_violation;

  const Eigen::VectorXd sv = exact_sv(game, kAttackExactCap);
  auto evaluate = [&](const Partition& p) {
    Evaluated e;
    for (int g = 0; g < p.size(); ++g) {
      e.sizes.push_back(static_cast<int>(p.group(g).size()));
      e.gsv.push_back(exact_gsv(game, p, g));
      double f = 0.0;
      for (int i : p.group(g)) f += sv[i];
      e.fgsv.push_back(f);
    }
    return e;
  };
  const int target = schedules.empty() ? 0 : schedules.front().target_group;
  summarise(report, 1, target, evaluate(partition));
  for (const auto& schedule : schedules) {
    if (schedule.target_group != target) {
      throw DomainError("run_attack: all schedules must target the same group");
    }
    summarise(report, schedule.pieces, target, evaluate(apply_split(partition, schedule)));
  }
  finish(report);
  return report;
}

nlohmann::json to_json(const AttackReport& report) {
  nlohmann::json j;
  j["prudent"] = report.prudent;
  j["prudence_violation"] =
      report.prudence_violation ? nlohmann::json(*report.prudence_violation) : nlohmann::json();
  j["gsv_inflated"] = report.gsv_inflated;
  j["gsv_monotone"] = report.gsv_monotone;
  j["fgsv_constant"] = report.fgsv_constant;
  auto& outcomes = j["outcomes"] = nlohmann::json::array();
  for (const auto& o : report.outcomes) {
    outcomes.push_back({{"pieces", o.pieces},
                        {"attacker_gsv", o.attacker_gsv},
                        {"victim_gsv", o.victim_gsv},
                        {"attacker_fgsv", o.attacker_fgsv},
                        {"victim_fgsv", o.victim_fgsv}});
  }
  auto& rows = j["rows"] = nlohmann::json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"pieces", r.pieces},
                    {"group", r.group},
                    {"role", r.role},
                    {"size", r.size},
                    {"gsv", r.gsv},
                    {"fgsv", r.fgsv}});
  }
  return j;
}

}  // namespace fgsv
