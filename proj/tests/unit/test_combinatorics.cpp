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


#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "fgsv/combinatorics.hpp"
#include "fgsv/errors.hpp"
#include "support/oracles.hpp"

namespace fgsv {
namespace {

TEST(Combinatorics, HypergeomExamples) {
  EXPECT_NEAR(hypergeom_pmf({4, 2, 2}, 1), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(hypergeom_pmf({5, 0, 3}, 0), 1.0, 1e-15);
  EXPECT_EQ(hypergeom_pmf({4, 2, 2}, 3), 0.0);
  EXPECT_EQ(hypergeom_pmf({4, 2, 2}, -1), 0.0);
  EXPECT_EQ(hypergeom_support({10, 7, 6}), std::make_pair(3, 6));
}

TEST(Combinatorics, HypergeomNormalizedAndSymmetric) {
  for (int n = 1; n <= 200; n += (n < 40 ? 1 : 7)) {
    for (int s0 = 0; s0 <= n; ++s0) {
      for (int s = 0; s <= n; ++s) {
        const auto [lo, hi] = hypergeom_support({n, s0, s});
        double total = 0.0;
        for (int s1 = lo; s1 <= hi; ++s1) {
          const double p = hypergeom_pmf({n, s0, s}, s1);
          total += p;
          ASSERT_NEAR(p, hypergeom_pmf({n, s, s0}, s1), 1e-12);
        }
        ASSERT_NEAR(total, 1.0, 1e-12) << n << " " << s0 << " " << s;
      }
    }
  }
}

TEST(Combinatorics, LogBinom) {
  EXPECT_EQ(log_binom(5, 0), 0.0);
  EXPECT_NEAR(log_binom(4, 2), std::log(6.0), 1e-15);
  EXPECT_NEAR(log_binom(52, 5), std::log(2598960.0), 1e-13);
  for (int n = 1; n <= 60; ++n) {
    for (int k = 0; k <= n; ++k) {
      ASSERT_NEAR(log_binom(n, k), std::log(testing::binom(n, k)), 1e-10 * std::max(1.0, std::log(testing::binom(n, k))));
    }
  }
  const long big = 1000000;
  const long double ref = std::lgamma(static_cast<long double>(big) + 1) -
                          2 * std::lgamma(static_cast<long double>(big / 2) + 1);
  EXPECT_NEAR(log_binom(big, big / 2), static_cast<double>(ref), 1e-10 * static_cast<double>(ref));
}

TEST(Combinatorics, SamplerForcedExamples) {
  Rng rng(1);
  const IndexSet group{0, 1};
  auto a = sample_subset_with_intersection(rng, 4, group, 2, 2);
  std::sort(a.begin(), a.end());
  EXPECT_EQ(a, (IndexSet{0, 1}));
  auto b = sample_subset_with_intersection(rng, 4, group, 4, 2);
  std::sort(b.begin(), b.end());
  EXPECT_EQ(b, (IndexSet{0, 1, 2, 3}));
  EXPECT_THROW(sample_subset_with_intersection(rng, 4, group, 2, 3), DomainError);
  EXPECT_THROW(sample_subset_with_intersection(rng, 4, group, 4, 1), DomainError);
}

TEST(Combinatorics, SamplerUniformOverFamily) {
  Rng rng(2024);
  const IndexSet group{0, 1, 2};
  std::map<IndexSet, int> counts;
  const int draws = 100000;
  for (int t = 0; t < draws; ++t) {
    auto s = sample_subset_with_intersection(rng, 6, group, 3, 1);
    std::sort(s.begin(), s.end());
    ASSERT_EQ(std::count_if(s.begin(), s.end(), [](int i) { return i < 3; }), 1);
    ++counts[s];
  }
  ASSERT_EQ(counts.size(), 9u);
  double chi2 = 0.0;
  for (const auto& [set, c] : counts) {
    EXPECT_NEAR(c / static_cast<double>(draws), 1.0 / 9.0, 0.01);
    const double e = draws / 9.0;
    chi2 += (c - e) * (c - e) / e;
  }
  EXPECT_LT(chi2, 26.12);  // chi2(8) upper 0.001 quantile
}

TEST(Combinatorics, PairedTupleExamples) {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const auto tuple = sample_paired_tuple(rng, 3, IndexSet{0}, 1, 0);
    ASSERT_EQ(tuple.subset.size(), 1u);
    EXPECT_TRUE(tuple.subset[0] == 1 || tuple.subset[0] == 2);
    EXPECT_EQ(tuple.inside, 0);
    EXPECT_EQ(tuple.outside, 3 - tuple.subset[0]);
  }
  for (int t = 0; t < 50; ++t) {
    const auto tuple = sample_paired_tuple(rng, 4, IndexSet{0, 1}, 2, 1);
    const std::set<int> s(tuple.subset.begin(), tuple.subset.end());
    EXPECT_EQ(s.size(), 2u);
    EXPECT_FALSE(s.contains(tuple.inside));
    EXPECT_FALSE(s.contains(tuple.outside));
    EXPECT_LT(tuple.inside, 2);
    EXPECT_GE(tuple.outside, 2);
  }
}

TEST(Combinatorics, PairedTupleEmptySide) {
  Rng rng(5);
  try {
    sample_paired_tuple(rng, 4, IndexSet{0, 1}, 2, 2);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("S0"), std::string::npos) << e.what();
  }
  EXPECT_THROW(sample_paired_tuple(rng, 4, IndexSet{0, 1}, 2, 0), DomainError);
  EXPECT_THROW(sample_paired_tuple(rng, 4, IndexSet{0, 1, 2, 3}, 1, 0), DomainError);
}

TEST(Combinatorics, ForEachCombinationCounts) {
  const IndexSet pool{3, 5, 7, 9, 11};
  for (int k = 0; k <= 5; ++k) {
    std::set<IndexSet> seen;
    for_each_combination(pool, k, [&](std::span<const int> c) {
      IndexSet v(c.begin(), c.end());
      std::sort(v.begin(), v.end());
      seen.insert(v);
    });
    EXPECT_EQ(seen.size(), static_cast<std::size_t>(testing::binom(5, k)));
  }
}

TEST(Combinatorics, DerivedStreamsDiffer) {
  Rng a = derive_rng(7, 1), b = derive_rng(7, 2), c = derive_rng(7, 1);
  EXPECT_NE(a(), b());
  Rng a2 = derive_rng(7, 1);
  EXPECT_EQ(a2(), c());
}

}  // namespace
}  // namespace fgsv
