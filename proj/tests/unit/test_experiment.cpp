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


#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "fgsv/errors.hpp"
#include "fgsv/experiment.hpp"

namespace fgsv {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

json small_bench() {
  return json::parse(R"({
    "schema_version": 1,
    "game": {"type": "sou", "n": 8, "d": 64, "seed": 3},
    "groups": {"rule": "mod", "k": 4},
    "methods": [{"name": "fgsv", "s_bar": 3}, "permutation", "kernelshap"],
    "budget": 2000,
    "checkpoints": 10,
    "replications": 5,
    "seed": 11
  })");
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("fgsv_experiment_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string& args) {
  const std::string command = std::string(FGSV_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Experiment, RowAccounting) {
  const BenchmarkResult result = run_benchmark(parse_benchmark_config(small_bench()), {});
  EXPECT_EQ(result.rows.size(), 60u);
  EXPECT_EQ(result.summary.size(), 12u);
  EXPECT_EQ(result.curves.size(), 60u * 10u);
  EXPECT_EQ(result.truth_source, "closed_form");
  for (const BenchmarkRow& row : result.rows) {
    EXPECT_LE(row.evaluations, 2000u);
    EXPECT_GE(row.abs_rel_err, 0.0);
    EXPECT_EQ(row.n, 8);
  }
  const auto means = mean_are_by_method(result);
  ASSERT_EQ(means.size(), 3u);
  EXPECT_EQ(means[0].first, "fgsv");
}

TEST(Experiment, DeterministicAcrossThreads) {
  const BenchmarkConfig config = parse_benchmark_config(small_bench());
  const BenchmarkResult a = run_benchmark(config, {});
  RunOptions threaded;
  threaded.threads = 3;
  const BenchmarkResult b = run_benchmark(config, threaded);
  EXPECT_EQ(curves_csv(a), curves_csv(b));
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].estimate, b.rows[i].estimate);
    EXPECT_EQ(a.rows[i].seed, b.rows[i].seed);
  }
  RunOptions reseeded;
  reseeded.seed = 12;
  EXPECT_NE(curves_csv(a), curves_csv(run_benchmark(config, reseeded)));
}

TEST(Experiment, ConfigValidation) {
  json doc = small_bench();
  doc["bogus"] = 1;
  EXPECT_THROW(parse_benchmark_config(doc), ConfigError);
  doc = small_bench();
  doc["schema_version"] = 2;
  EXPECT_THROW(parse_benchmark_config(doc), ConfigError);
  doc = small_bench();
  doc["methods"] = json::array({"permutation", "permutation"});
  EXPECT_THROW(parse_benchmark_config(doc), ConfigError);
  doc = small_bench();
  doc["methods"] = json::array({"magic"});
  EXPECT_THROW(parse_benchmark_config(doc), ConfigError);
  doc = small_bench();
  doc["budget"] = "lots";
  EXPECT_THROW(parse_benchmark_config(doc), ConfigError);

  // No closed form, n above the exact cap, no reference run.
  doc = small_bench();
  doc["game"] = json::parse(R"({"type": "regression_synthetic", "n_train": 24, "n_test": 40,
                                "predictors": 2, "noise": 0.5, "lambda": 0.01, "seed": 1})");
  doc["exact_cap"] = 12;
  EXPECT_THROW(run_benchmark(parse_benchmark_config(doc), {}), ConfigError);

  doc = small_bench();
  doc["budget"] = 5;
  EXPECT_THROW(run_benchmark(parse_benchmark_config(doc), {}), ConfigError);
}

TEST(Experiment, GameAndPartitionBuilders) {
  EXPECT_THROW(make_game(json::parse(R"({"type": "sou", "n": 8, "extra": 1})")), ConfigError);
  EXPECT_THROW(make_game(json::parse(R"({"type": "mystery"})")), ConfigError);
  const auto ubar = make_expected_utility(json::parse(R"({"family": "saturating", "base": 2})"));
  EXPECT_DOUBLE_EQ(ubar(2), 0.75);
  const auto table = make_expected_utility(json::parse(R"({"family": "table", "values": [0, 1, 3]})"));
  EXPECT_EQ(table(2), 3.0);
  const Partition p = make_partition(json::parse(R"({"lists": [[1, 3], [2, 4]]})"), 4);
  EXPECT_EQ(p.group(0), (IndexSet{0, 2}));
  EXPECT_THROW(make_partition(json::parse(R"({"lists": [[1, 2], [2, 3, 4]]})"), 4), ConfigError);
  EXPECT_THROW(make_partition(json::parse(R"({"rule": "mod", "k": 9})"), 4), ConfigError);
}

TEST(Experiment, WritesCsvOutputs) {
  const fs::path dir = scratch("bench");
  const json doc = small_bench();
  const BenchmarkResult result = run_benchmark(parse_benchmark_config(doc), {});
  write_benchmark(result, doc, dir);
  const std::string results = slurp(dir / "results.csv");
  EXPECT_EQ(results.rfind("method,n,group_id,replication,seed,evaluations,estimate,truth,", 0), 0u);
  EXPECT_EQ(std::count(results.begin(), results.end(), '\n'), 61);
  EXPECT_TRUE(fs::exists(dir / "summary.csv"));
  EXPECT_TRUE(fs::exists(dir / "curves.csv"));
  const json manifest = read_json_file(dir / "manifest.json");
  EXPECT_EQ(manifest.at("config"), doc);
}

TEST(Experiment, AttackCommand) {
  const json doc = json::parse(R"({
    "schema_version": 1,
    "ubar": {"family": "saturating", "base": 2},
    "group_sizes": [1, 2],
    "target_group": 2,
    "pieces": [2]
  })");
  const AttackReport report = run_attack_cmd(doc, {}, std::nullopt);
  EXPECT_NEAR(report.outcomes.back().attacker_gsv, 7.0 / 12.0, 1e-15);
  EXPECT_TRUE(report.fgsv_constant);

  const fs::path dir = scratch("attack");
  json sweep = doc;
  sweep["group_sizes"] = {10, 20};
  sweep["pieces"] = {2, 3, 4};
  const AttackReport swept = run_attack_cmd(sweep, {}, dir);
  EXPECT_TRUE(swept.gsv_monotone);
  EXPECT_TRUE(fs::exists(dir / "attack.csv"));
  EXPECT_TRUE(fs::exists(dir / "attack.json"));

  json linear = sweep;
  linear["ubar"] = {{"family", "linear"}, {"slope", 1.0}};
  const AttackReport flat = run_attack_cmd(linear, {}, std::nullopt);
  for (const auto& o : flat.outcomes) EXPECT_NEAR(o.attacker_gsv, 20.0, 1e-12);

  json too_many = doc;
  too_many["pieces"] = {3};
  EXPECT_THROW(run_attack_cmd(too_many, {}, std::nullopt), ConfigError);
  json bad_target = doc;
  bad_target["target_group"] = 3;
  EXPECT_THROW(run_attack_cmd(bad_target, {}, std::nullopt), ConfigError);
}

TEST(Experiment, AxiomsAndExactCommands) {
  const json doc = json::parse(R"({
    "schema_version": 1,
    "game": {"type": "size_only", "n": 6, "ubar": {"family": "saturating", "base": 2}},
    "partitions": [{"lists": [[1, 2], [3, 4, 5, 6]]}, {"lists": [[1, 2], [3, 4], [5, 6]]}]
  })");
  const auto reports = run_axioms_cmd(doc, std::nullopt);
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_EQ(reports[0].valuation, "fgsv");
  EXPECT_TRUE(reports[0].all_passed());
  EXPECT_FALSE(reports[1].result("faithfulness").passed);

  json empty = doc;
  empty["partitions"] = json::array();
  EXPECT_THROW(run_axioms_cmd(empty, std::nullopt), ConfigError);

  const json exact = run_exact_cmd(json::parse(R"({
    "schema_version": 1,
    "game": {"type": "sou", "n": 6, "seed": 2},
    "groups": {"rule": "mod", "k": 2}
  })"), std::nullopt);
  EXPECT_FALSE(exact.dump().empty());
}

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch("cli");
  std::ofstream(dir / "bench.json") << small_bench().dump();
  EXPECT_EQ(run_cli("bench --config " + (dir / "bench.json").string() + " --out " +
                    (dir / "out").string()),
            0);
  EXPECT_TRUE(fs::exists(dir / "out" / "results.csv"));

  json bad = small_bench();
  bad["unknown"] = true;
  std::ofstream(dir / "bad.json") << bad.dump();
  EXPECT_EQ(run_cli("bench --config " + (dir / "bad.json").string()), 2);
  std::ofstream(dir / "broken.json") << "{ not json";
  EXPECT_EQ(run_cli("bench --config " + (dir / "broken.json").string()), 2);
  EXPECT_EQ(run_cli("bench --config " + (dir / "missing.json").string()), 2);
  EXPECT_EQ(run_cli("frobnicate"), 2);

  std::ofstream(dir / "attack.json") << R"({"schema_version": 1,
    "ubar": {"family": "saturating", "base": 2}, "group_sizes": [1, 2],
    "target_group": 2, "pieces": [5]})";
  EXPECT_EQ(run_cli("attack --config " + (dir / "attack.json").string()), 2);

  std::ofstream(dir / "zero.json") << R"({"schema_version": 1,
    "game": {"type": "size_only", "n": 4, "ubar": {"family": "linear", "slope": 0}},
    "groups": {"rule": "mod", "k": 2}, "methods": ["permutation"], "budget": 100,
    "checkpoints": 5})";
  EXPECT_EQ(run_cli("bench --config " + (dir / "zero.json").string()), 3);

  std::ofstream(dir / "exact.json") << R"({"schema_version": 1,
    "game": {"type": "sou", "n": 5, "seed": 1}, "groups": {"rule": "mod", "k": 2}})";
  EXPECT_EQ(run_cli("exact --config " + (dir / "exact.json").string() + " --out " +
                    (dir / "exact").string()),
            0);
  EXPECT_EQ(run_cli("--version"), 0);
}

}  // namespace
}  // namespace fgsv
