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

#ifndef FGSV_AXIOMS_HPP_
#define FGSV_AXIOMS_HPP_

#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fgsv/exact.hpp"
#include "fgsv/game.hpp"

namespace fgsv {

// nu_{U, Pi}(S_k).
using GroupValuation =
    std::function<double(const Game& game, const Partition& partition, int k)>;

GroupValuation fgsv_valuation(int cap = kDefaultExactCap);
GroupValuation gsv_valuation(int cap = kDefaultExactCap);

struct AxiomResult {
  std::string axiom;
  bool passed = true;
  double max_violation = 0.0;
  int checks = 0;
  std::string detail;
};

struct AxiomReport {
  std::string valuation;
  std::vector<AxiomResult> results;

  bool all_passed() const;
  const AxiomResult& result(const std::string& axiom) const;
};

struct AxiomOptions {
  double tolerance = 1e-10;
  double linearity_alpha = 0.7;
  double linearity_beta = -1.3;
};

// Empirical check of the five faithful-valuation axioms:
//   null player  - a game where one group is made dummy gets value 0;
//   symmetry     - two equal-size groups made interchangeable get equal value;
//   linearity    - value(a U + b V) = a value(U) + b value(V);
//   efficiency   - values over a partition sum to U([n]) - U(empty);
//   faithfulness - a group shared by two partitions gets the same value.
// Failures are recorded in the report, never thrown.
AxiomReport check_axioms(const GroupValuation& valuation, const Game& game,
                         const std::vector<Partition>& partitions,
                         const AxiomOptions& options = {},
                         std::string valuation_name = "custom");

nlohmann::json to_json(const AxiomReport& report);

}  // namespace fgsv

#endif  // FGSV_AXIOMS_HPP_
