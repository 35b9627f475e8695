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

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "fgsv/attacks.hpp"
#include "fgsv/errors.hpp"
#include "fgsv/exact.hpp"
#include "fgsv/games.hpp"
#include "support/oracles.hpp"

namespace fgsv {
namespace {

double saturating(int s) { return 1.0 - std::pow(2.0, -s); }

TEST(Attacks, Prudence) {
  EXPECT_TRUE(prudence_check(saturating, 40).prudent);
  const PrudenceResult linear = prudence_check([](int s) { return 2.0 * s; }, 10);
  EXPECT_FALSE(linear.prudent);
  EXPECT_EQ(linear.first_violation, 0);
  EXPECT_TRUE(prudence_check([](int s) { return std::pow(s, 3.0); }, 30).prudent);
  const PrudenceResult concave = prudence_check([](int s) { return std::sqrt(s); }, 10);
  EXPECT_TRUE(concave.prudent);
  const PrudenceResult cubic_tail =
      prudence_check([](int s) { return -std::pow(s - 5.0, 3.0); }, 10);
  EXPECT_FALSE(cubic_tail.prudent);
}

TEST(Attacks, ExpectedGsvExamples) {
  EXPECT_NEAR(expected_gsv(saturating, {1, 2}, 1), 0.5625, 1e-15);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(expected_gsv(saturating, {1, 1, 1}, k), 7.0 / 24.0, 1e-15);
  const auto linear = [](int s) { return 1.5 * s; };
  EXPECT_NEAR(expected_gsv(linear, {3, 1, 4, 2}, 2), 6.0, 1e-13);
  EXPECT_THROW(expected_gsv(saturating, {1, 2}, 2), DomainError);
  EXPECT_THROW(expected_gsv(saturating, {1, 0}, 0), DomainError);
}

TEST(Attacks, ExpectedGsvMatchesEnumeration) {
  const std::vector<int> sizes{2, 3, 1, 2};
  SizeOnlyGame game(8, [](int s) { return std::log1p(s) + 0.1 * s * s; });
  IndexSet players = all_players(8);
  std::vector<IndexSet> groups;
  int next = 0;
  for (int size : sizes) {
    groups.emplace_back(players.begin() + next, players.begin() + next + size);
    next += size;
  }
  const Partition partition(8, groups);
  double total = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double v = expected_gsv(game.ubar_function(), sizes, k);
    EXPECT_NEAR(v, exact_gsv(game, partition, k), 1e-12);
    EXPECT_NEAR(expected_fgsv(game.ubar_function(), sizes, k), exact_fgsv(game, groups[k]), 1e-12);
    total += v;
  }
  EXPECT_NEAR(total, game.ubar(8) - game.ubar(0), 1e-12);
}

TEST(Attacks, SplitSizes) {
  EXPECT_EQ(split_sizes(100, 3), (std::vector<int>{33, 33, 34}));
  EXPECT_EQ(split_sizes(100, 4), (std::vector<int>{25, 25, 25, 25}));
  EXPECT_EQ(split_sizes(7, 3), (std::vector<int>{2, 2, 3}));
  EXPECT_THROW(split_sizes(2, 3), DomainError);
  EXPECT_EQ(apply_split(std::vector<int>{5, 7, 2}, {1, 3}), (std::vector<int>{5, 2, 2, 2, 3}));
  const Partition p(6, {{0, 1}, {2, 3, 4, 5}});
  const Partition q = apply_split(p, {1, 2});
  ASSERT_EQ(q.size(), 3);
  EXPECT_EQ(q.group(1), (IndexSet{2, 3}));
  EXPECT_EQ(q.group(2), (IndexSet{4, 5}));
}

TEST(Attacks, HeadlineSplit) {
  const AttackReport report = run_attack(saturating, {1, 2}, {{1, 2}});
  ASSERT_EQ(report.outcomes.size(), 2u);
  EXPECT_NEAR(report.outcomes[0].attacker_gsv, 0.5625, 1e-15);
  EXPECT_NEAR(report.outcomes[1].attacker_gsv, 7.0 / 12.0, 1e-15);
  EXPECT_NEAR(report.outcomes[0].attacker_fgsv, 7.0 / 12.0, 1e-15);
  EXPECT_NEAR(report.outcomes[1].attacker_fgsv, 7.0 / 12.0, 1e-15);
  EXPECT_TRUE(report.prudent);
  EXPECT_TRUE(report.gsv_inflated);
  EXPECT_TRUE(report.fgsv_constant);
}

TEST(Attacks, PrudentSweepInflatesMonotonically) {
  const AttackReport report = run_attack(saturating, {12, 30}, {{1, 2}, {1, 3}, {1, 4}});
  EXPECT_TRUE(report.gsv_inflated);
  EXPECT_TRUE(report.gsv_monotone);
  EXPECT_TRUE(report.fgsv_constant);
  for (const AttackOutcome& o : report.outcomes) {
    EXPECT_NEAR(o.attacker_gsv + o.victim_gsv, saturating(42) - saturating(0), 1e-12);
  }
  // Every shell row is tagged and attacker rows are the trailing groups.
  int attackers = 0;
  for (const AttackGroupRow& row : report.rows) {
    if (row.pieces == 4 && row.role == "attacker") ++attackers;
  }
  EXPECT_EQ(attackers, 4);
}

TEST(Attacks, LinearNoChange) {
  const AttackReport report = run_attack([](int s) { return 0.5 * s; }, {3, 6}, {{1, 2}, {1, 3}});
  EXPECT_FALSE(report.prudent);
  EXPECT_FALSE(report.gsv_inflated);
  EXPECT_TRUE(report.fgsv_constant);
  for (const AttackOutcome& o : report.outcomes) EXPECT_NEAR(o.attacker_gsv, 3.0, 1e-12);
}

TEST(Attacks, Validation) {
  EXPECT_THROW(run_attack(saturating, {1, 2}, {{1, 3}}), DomainError);
  EXPECT_THROW(run_attack(saturating, {1, 2}, {{2, 2}}), DomainError);
  EXPECT_THROW(run_attack(saturating, {2, 2}, {{0, 2}, {1, 2}}), DomainError);
}

TEST(Attacks, GeneralGameAgreesWithSizeOnly) {
  SizeOnlyGame game(6, saturating);
  const Partition p(6, {{0, 1}, {2, 3, 4, 5}});
  const AttackReport general = run_attack(game, p, {{1, 2}, {1, 4}});
  const AttackReport closed = run_attack(saturating, {2, 4}, {{1, 2}, {1, 4}});
  ASSERT_EQ(general.outcomes.size(), closed.outcomes.size());
  for (std::size_t i = 0; i < closed.outcomes.size(); ++i) {
    EXPECT_NEAR(general.outcomes[i].attacker_gsv, closed.outcomes[i].attacker_gsv, 1e-12);
    EXPECT_NEAR(general.outcomes[i].attacker_fgsv, closed.outcomes[i].attacker_fgsv, 1e-12);
  }
  EXPECT_EQ(general.gsv_inflated, closed.gsv_inflated);
  EXPECT_TRUE(general.fgsv_constant);
}

TEST(Attacks, GeneralGameFgsvConstantOnSou) {
  auto game = testing::sou_ptr(9, 81, 13);
  const Partition p(9, {{0, 1, 2}, {3, 4, 5, 6, 7, 8}});
  const AttackReport report = run_attack(*game, p, {{1, 2}, {1, 3}});
  EXPECT_TRUE(report.fgsv_constant);
  const auto json = to_json(report);
  EXPECT_TRUE(json.contains("outcomes"));
}

}  // namespace
}  // namespace fgsv
