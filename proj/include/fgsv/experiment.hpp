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

#ifndef FGSV_EXPERIMENT_HPP_
#define FGSV_EXPERIMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fgsv/attacks.hpp"
#include "fgsv/axioms.hpp"
#include "fgsv/exact.hpp"
#include "fgsv/game.hpp"
#include "fgsv/games.hpp"

namespace fgsv {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

// Batch-driver plumbing shared by the CLI subcommands. Config documents are
// JSON objects with a `schema_version` field; unknown keys are rejected with
// ConfigError. Player and group ids are 1-based in configs and reports.

// {"type": "sou", "n", "d" (default n^2), "seed"}
// {"type": "size_only", "n", "ubar": {...}}
// {"type": "regression_csv", "path", "test_fraction", "lambda", "seed"}
// {"type": "regression_synthetic", "n_train", "n_test", "predictors", "noise",
//  "lambda", "seed"}
std::unique_ptr<Game> make_game(const nlohmann::json& spec);

// {"family": "saturating", "base": b}   1 - b^-s
// {"family": "linear", "slope": a}      a s
// {"family": "power", "exponent": p}    s^p
// {"family": "log1p"}                   ln(1 + s)
// {"family": "sqrt"}                    sqrt(s)
// {"family": "exp", "rate": r}          exp(r s)
// {"family": "table", "values": [...]}  explicit ubar(0), ubar(1), ...
ExpectedUtility make_expected_utility(const nlohmann::json& spec);

// {"rule": "mod", "k": K} or {"lists": [[1, 2], [3, 4]]} (1-based ids).
Partition make_partition(const nlohmann::json& spec, int n);

struct MethodSpec {
  std::string name;  // "fgsv" or a baseline name
  int s_bar = 10;    // fgsv only
  std::optional<std::uint64_t> m;  // fgsv only; default fits the group budget
};

struct BenchmarkConfig {
  nlohmann::json game;
  nlohmann::json groups;
  std::vector<MethodSpec> methods;
  std::uint64_t budget = 20000;
  std::uint64_t checkpoints = 100;
  int replications = 1;
  std::uint64_t seed = 0;
  // High-budget FGSV run used as ground truth when no closed form or exact
  // oracle is available.
  std::optional<std::uint64_t> reference_budget;
  int exact_cap = kDefaultExactCap;
};

BenchmarkConfig parse_benchmark_config(const nlohmann::json& document);

struct RunOptions {
  std::optional<std::uint64_t> seed;  // overrides the config seed
  int threads = 1;
};

struct BenchmarkRow {
  std::string method;
  int n = 0;
  int group_id = 0;  // 1-based
  int replication = 0;
  std::uint64_t seed = 0;
  std::uint64_t evaluations = 0;
  double estimate = 0.0;
  double truth = 0.0;
  double abs_rel_err = 0.0;
  double aucc = 0.0;
  std::string truth_source;
  std::int64_t wall_time_ns = 0;
  double ns_per_eval = 0.0;
};

struct CurveRow {
  std::string method;
  int group_id = 0;
  int replication = 0;
  int checkpoint = 0;  // 1-based
  std::uint64_t evaluations = 0;
  double estimate = 0.0;
  double abs_rel_err = 0.0;
};

struct SummaryRow {
  std::string method;
  int group_id = 0;
  int replications = 0;
  double mean_are = 0.0;
  double sd_are = 0.0;
  double mean_aucc = 0.0;
  double sd_aucc = 0.0;
  double mean_ns_per_eval = 0.0;
};

struct BenchmarkResult {
  std::vector<BenchmarkRow> rows;
  std::vector<SummaryRow> summary;
  std::vector<CurveRow> curves;
  std::vector<double> truths;  // per group
  std::string truth_source;
  std::uint64_t seed = 0;
};

BenchmarkResult run_benchmark(const BenchmarkConfig& config, const RunOptions& options);

// Mean over groups of the per-method mean ARE, in config method order.
std::vector<std::pair<std::string, double>> mean_are_by_method(const BenchmarkResult& result);

std::string results_csv(const BenchmarkResult& result);
std::string summary_csv(const BenchmarkResult& result);
std::string curves_csv(const BenchmarkResult& result);

// results.csv, summary.csv, curves.csv and manifest.json under `out_dir`.
void write_benchmark(const BenchmarkResult& result, const nlohmann::json& config,
                     const std::filesystem::path& out_dir);

// {"schema_version", "ubar" | "game", "group_sizes" | "groups", "target_group"
//  (1-based), "pieces": [2, 3, 4], "seed"}
AttackReport run_attack_cmd(const nlohmann::json& document, const RunOptions& options,
                            const std::optional<std::filesystem::path>& out_dir);

std::string attack_csv(const AttackReport& report, std::uint64_t seed,
                       const std::string& timestamp);

// {"schema_version", "game", "partitions": [groups spec, ...],
//  "methods": ["fgsv", "gsv"]}
std::vector<AxiomReport> run_axioms_cmd(const nlohmann::json& document,
                                        const std::optional<std::filesystem::path>& out_dir);

// {"schema_version", "game", "groups"}: exact SV, FGSV and GSV per group.
nlohmann::json run_exact_cmd(const nlohmann::json& document,
                             const std::optional<std::filesystem::path>& out_dir);

nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace fgsv

#endif  // FGSV_EXPERIMENT_HPP_
