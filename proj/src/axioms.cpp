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

#include "fgsv/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "fgsv/errors.hpp"
#include "fgsv/games.hpp"

namespace fgsv {

GroupValuation fgsv_valuation(int cap) {
  return [cap](const Game& game, const Partition& partition, int k) {
    return exact_fgsv(game, partition.group(k), cap);
  };
}

GroupValuation gsv_valuation(int cap) {
  return [cap](const Game& game, const Partition& partition, int k) {
    return exact_gsv(game, partition, k, cap);
  };
}

bool AxiomReport::all_passed() const {
  return std::all_of(results.begin(), results.end(),
                     [](const AxiomResult& r) { return r.passed; });
}

const AxiomResult& AxiomReport::result(const std::string& axiom) const {
  for (const auto& r : results) {
    if (r.axiom == axiom) return r;
  }
  throw std::out_of_range("no axiom named " + axiom);
}

namespace {

class Tally {
 public:
  Tally(std::string axiom, double tolerance) : tolerance_(tolerance) {
    result_.axiom = std::move(axiom);
  }

  void check(double lhs, double rhs, const std::string& where) {
    const double gap = std::abs(lhs - rhs);
    ++result_.checks;
    if (!(gap <= result_.max_violation)) result_.max_violation = gap;
    if (!(gap <= tolerance_) && result_.passed) {
      result_.passed = false;
      std::ostringstream out;
      out.precision(17);
      out << where << ": " << lhs << " vs " << rhs;
      result_.detail = out.str();
    }
  }

  AxiomResult finish(const std::string& vacuous_note) {
    if (result_.checks == 0) result_.detail = vacuous_note;
    return std::move(result_);
  }

 private:
  AxiomResult result_;
  double tolerance_;
};

std::string label(int partition, int group) {
  return "partition " + std::to_string(partition + 1) + " group " + std::to_string(group + 1);
}

// A fixed second utility for the linearity check.
double companion_utility(std::span<const int> subset, int n) {
  double value = 0.0;
  bool has_first = false;
  bool has_last = false;
  for (int i : subset) {
    value += static_cast<double>(i + 1) / n;
    has_first = has_first || i == 0;
    has_last = has_last || i == n - 1;
  }
  const double fraction = static_cast<double>(subset.size()) / n;
  value += fraction * fraction;
  if (has_first && has_last) value += 0.5;
  return value;
}

std::optional<std::pair<int, int>> first_equal_size_pair(const Partition& partition) {
  for (int a = 0; a < partition.size(); ++a) {
    for (int b = a + 1; b < partition.size(); ++b) {
      if (partition.group(a).size() == partition.group(b).size()) return std::make_pair(a, b);
    }
  }
  return std::nullopt;
}

}  // namespace

AxiomReport check_axioms(const GroupValuation& valuation, const Game& game,
                         const std::vector<Partition>& partitions, const AxiomOptions& options,
                         std::string valuation_name) {
  const int n = game.size();
  for (const auto& partition : partitions) {
    if (partition.players() != n) throw DomainError("partition size differs from game");
  }
  AxiomReport report;
  report.valuation = std::move(valuation_name);
  const double tol = options.tolerance;

  std::vector<std::vector<double>> values(partitions.size());
  for (std::size_t p = 0; p < partitions.size(); ++p) {
    for (int k = 0; k < partitions[p].size(); ++k) {
      values[p].push_back(valuation(game, partitions[p], k));
    }
  }

  Tally null_player("null_player", tol);
  for (std::size_t p = 0; p < partitions.size(); ++p) {
    for (int k = 0; k < partitions[p].size(); ++k) {
      std::vector<unsigned char> dummy(n, 0);
      for (int i : partitions[p].group(k)) dummy[i] = 1;
      FunctionGame nulled(
          n,
          [&game, dummy](std::span<const int> subset) {
            IndexSet kept;
            for (int i : subset) {
              if (!dummy[i]) kept.push_back(i);
            }
            return game.evaluate(kept);
          },
          "null_group");
      null_player.check(valuation(nulled, partitions[p], k), 0.0, label(p, k));
    }
  }
  report.results.push_back(null_player.finish("no groups"));

  Tally symmetry("symmetry", tol);
  for (std::size_t p = 0; p < partitions.size(); ++p) {
    const Partition& partition = partitions[p];
    const auto pair = first_equal_size_pair(partition);
    if (!pair) continue;
    const auto [a, b] = *pair;
    // Members of the two groups become interchangeable: any c of them count
    // as the first c of the merged (sorted) list.
    IndexSet merged = partition.group(a);
    merged.insert(merged.end(), partition.group(b).begin(), partition.group(b).end());
    std::sort(merged.begin(), merged.end());
    std::vector<unsigned char> in_pair(n, 0);
    for (int i : merged) in_pair[i] = 1;
    FunctionGame symmetric(
        n,
        [&game, merged, in_pair](std::span<const int> subset) {
          IndexSet canonical;
          std::size_t paired = 0;
          for (int i : subset) {
            if (in_pair[i]) {
              ++paired;
            } else {
              canonical.push_back(i);
            }
          }
          canonical.insert(canonical.end(), merged.begin(), merged.begin() + paired);
          return game.evaluate(canonical);
        },
        "symmetrised");
    symmetry.check(valuation(symmetric, partition, a), valuation(symmetric, partition, b),
                   label(p, a) + " vs group " + std::to_string(b + 1));
  }
  report.results.push_back(symmetry.finish("no equal-size group pair in any partition"));

  Tally linearity("linearity", tol);
  {
    const double alpha = options.linearity_alpha;
    const double beta = options.linearity_beta;
    FunctionGame companion(
        n, [n](std::span<const int> subset) { return companion_utility(subset, n); },
        "companion");
    FunctionGame combined(
        n,
        [&game, alpha, beta, n](std::span<const int> subset) {
          return alpha * game.evaluate(subset) + beta * companion_utility(subset, n);
        },
        "combination");
    for (std::size_t p = 0; p < partitions.size(); ++p) {
      for (int k = 0; k < partitions[p].size(); ++k) {
        const double lhs = valuation(combined, partitions[p], k);
        const double rhs =
            alpha * values[p][k] + beta * valuation(companion, partitions[p], k);
        linearity.check(lhs, rhs, label(p, k));
      }
    }
  }
  report.results.push_back(linearity.finish("no groups"));

  Tally efficiency("efficiency", tol);
  {
    const double total = game.evaluate_grand() - game.evaluate_empty();
    for (std::size_t p = 0; p < partitions.size(); ++p) {
      double sum = 0.0;
      for (double v : values[p]) sum += v;
      efficiency.check(sum, total, "partition " + std::to_string(p + 1));
    }
  }
  report.results.push_back(efficiency.finish("no partitions"));

  Tally faithfulness("faithfulness", tol);
  for (std::size_t p = 0; p < partitions.size(); ++p) {
    for (std::size_t q = p + 1; q < partitions.size(); ++q) {
      for (int k = 0; k < partitions[p].size(); ++k) {
        const int j = partitions[q].find(partitions[p].group(k));
        if (j < 0) continue;
        faithfulness.check(values[p][k], values[q][j],
                           label(p, k) + " vs " + label(q, j));
      }
    }
  }
  report.results.push_back(faithfulness.finish("no group shared by two partitions"));
  return report;
}

nlohmann::json to_json(const AxiomReport& report) {
  nlohmann::json axioms = nlohmann::json::array();
  for (const auto& r : report.results) {
    axioms.push_back({{"axiom", r.axiom},
                      {"passed", r.passed},
                      {"checks", r.checks},
                      {"max_violation", r.max_violation},
                      {"detail", r.detail}});
  }
  return {{"valuation", report.valuation}, {"all_passed", report.all_passed()},
          {"axioms", axioms}};
}

}  // namespace fgsv
