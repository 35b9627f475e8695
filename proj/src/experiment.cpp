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

#include "fgsv/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <thread>

#include "fgsv/baselines.hpp"
#include "fgsv/errors.hpp"
#include "fgsv/estimator.hpp"
#include "fgsv/metrics.hpp"
#include "fgsv/regression.hpp"
#include "fgsv/serialization.hpp"

namespace fgsv {
namespace {

using nlohmann::json;

void require_object(const json& j, const std::string& context) {
  if (!j.is_object()) throw ConfigError(context + ": expected a JSON object");
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& context) {
  require_object(j, context);
  for (const auto& item : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(),
                     [&](const char* key) { return item.key() == key; })) {
      throw ConfigError(context + ": unknown field '" + item.key() + "'");
    }
  }
}

const json& require(const json& j, const char* key, const std::string& context) {
  if (!j.contains(key)) throw ConfigError(context + ": missing field '" + key + "'");
  return j.at(key);
}

template <typename T>
T as(const json& value, const std::string& what) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw ConfigError(what + ": wrong type");
  }
}

template <typename T>
T field(const json& j, const char* key, const std::string& context) {
  return as<T>(require(j, key, context), context + "." + key);
}

template <typename T>
T field_or(const json& j, const char* key, T fallback, const std::string& context) {
  if (!j.contains(key)) return fallback;
  return as<T>(j.at(key), context + "." + key);
}

int positive_int(const json& j, const char* key, const std::string& context) {
  const long long v = field<long long>(j, key, context);
  if (v < 1 || v > 1'000'000'000) throw ConfigError(context + "." + key + " must be positive");
  return static_cast<int>(v);
}

void check_schema(const json& document, const std::string& context) {
  require_object(document, context);
  const int version = field<int>(document, "schema_version", context);
  if (version != kSchemaVersion) {
    throw ConfigError(context + ": unsupported schema_version " + std::to_string(version));
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
  if (!out) throw ConfigError("failed writing " + path.string());
}

// Game specs without an explicit seed inherit the run seed.
json seeded_game_spec(json spec, std::uint64_t seed) {
  if (spec.is_object() && !spec.contains("seed")) {
    const auto type = spec.value("type", std::string());
    if (type == "sou" || type == "regression_synthetic" || type == "regression_csv") {
      spec["seed"] = seed;
    }
  }
  return spec;
}

}  // namespace

std::unique_ptr<Game> make_game(const json& spec) {
  require_object(spec, "game");
  const auto type = field<std::string>(spec, "type", "game");
  if (type == "sou") {
    check_keys(spec, {"type", "n", "d", "seed"}, "game");
    const int n = positive_int(spec, "n", "game");
    const int d = spec.contains("d") ? positive_int(spec, "d", "game") : n * n;
    const auto seed = field_or<std::uint64_t>(spec, "seed", 0, "game");
    if (n < 2) throw ConfigError("game.n must be >= 2 for an SOU game");
    SouGame generated = sou_generate(n, d, seed);
    return std::make_unique<SouGame>(n, generated.subsets(), generated.coefficients(), seed);
  }
  if (type == "size_only") {
    check_keys(spec, {"type", "n", "ubar"}, "game");
    const int n = positive_int(spec, "n", "game");
    return std::make_unique<SizeOnlyGame>(n, make_expected_utility(require(spec, "ubar", "game")),
                                          "size_only");
  }
  if (type == "regression_csv") {
    check_keys(spec, {"type", "path", "test_fraction", "lambda", "seed"}, "game");
    RegressionGame loaded = load_regression_csv(
        field<std::string>(spec, "path", "game"), field_or<double>(spec, "test_fraction", 0.2, "game"),
        field_or<double>(spec, "lambda", 1e-3, "game"), field_or<std::uint64_t>(spec, "seed", 0, "game"));
    return std::make_unique<RegressionGame>(loaded.train(), loaded.test(), loaded.lambda());
  }
  if (type == "regression_synthetic") {
    check_keys(spec, {"type", "n_train", "n_test", "predictors", "noise", "lambda", "seed"},
               "game");
    RegressionGame made = make_synthetic_regression(
        positive_int(spec, "n_train", "game"), positive_int(spec, "n_test", "game"),
        positive_int(spec, "predictors", "game"), field_or<double>(spec, "noise", 1.0, "game"),
        field_or<double>(spec, "lambda", 1e-3, "game"), field_or<std::uint64_t>(spec, "seed", 0, "game"));
    return std::make_unique<RegressionGame>(made.train(), made.test(), made.lambda());
  }
  throw ConfigError("game.type: unknown game type '" + type + "'");
}

ExpectedUtility make_expected_utility(const json& spec) {
  require_object(spec, "ubar");
  const auto family = field<std::string>(spec, "family", "ubar");
  if (family == "saturating") {
    check_keys(spec, {"family", "base"}, "ubar");
    const double base = field_or<double>(spec, "base", 2.0, "ubar");
    if (!(base > 1.0)) throw ConfigError("ubar.base must exceed 1");
    return [base](int s) { return 1.0 - std::pow(base, -s); };
  }
  if (family == "linear") {
    check_keys(spec, {"family", "slope"}, "ubar");
    const double slope = field_or<double>(spec, "slope", 1.0, "ubar");
    return [slope](int s) { return slope * s; };
  }
  if (family == "power") {
    check_keys(spec, {"family", "exponent"}, "ubar");
    const double p = field<double>(spec, "exponent", "ubar");
    return [p](int s) { return std::pow(static_cast<double>(s), p); };
  }
  if (family == "log1p") {
    check_keys(spec, {"family"}, "ubar");
    return [](int s) { return std::log1p(static_cast<double>(s)); };
  }
  if (family == "sqrt") {
    check_keys(spec, {"family"}, "ubar");
    return [](int s) { return std::sqrt(static_cast<double>(s)); };
  }
  if (family == "exp") {
    check_keys(spec, {"family", "rate"}, "ubar");
    const double rate = field_or<double>(spec, "rate", 1.0, "ubar");
    return [rate](int s) { return std::exp(rate * s); };
  }
  if (family == "table") {
    check_keys(spec, {"family", "values"}, "ubar");
    const auto values = field<std::vector<double>>(spec, "values", "ubar");
    if (values.empty()) throw ConfigError("ubar.values must not be empty");
    return [values](int s) {
      if (s < 0 || s >= static_cast<int>(values.size())) {
        throw DomainError("ubar table has no entry for size " + std::to_string(s));
      }
      return values[s];
    };
  }
  throw ConfigError("ubar.family: unknown family '" + family + "'");
}

Partition make_partition(const json& spec, int n) {
  require_object(spec, "groups");
  try {
    if (spec.contains("rule")) {
      check_keys(spec, {"rule", "k"}, "groups");
      if (field<std::string>(spec, "rule", "groups") != "mod") {
        throw ConfigError("groups.rule: only 'mod' is supported");
      }
      const int k = positive_int(spec, "k", "groups");
      if (k > n) throw ConfigError("groups.k exceeds the number of players");
      return Partition::modulo(n, k);
    }
    check_keys(spec, {"lists"}, "groups");
    const auto lists = field<std::vector<std::vector<int>>>(spec, "lists", "groups");
    std::vector<IndexSet> groups;
    for (const auto& list : lists) {
      IndexSet g;
      for (int id : list) g.push_back(id - 1);
      groups.push_back(std::move(g));
    }
    return Partition(n, std::move(groups));
  } catch (const DomainError& e) {
    throw ConfigError(std::string("groups: ") + e.what());
  }
}

BenchmarkConfig parse_benchmark_config(const json& document) {
  const std::string ctx = "bench config";
  check_schema(document, ctx);
  check_keys(document,
             {"schema_version", "game", "groups", "methods", "budget", "checkpoints",
              "replications", "seed", "reference_budget", "exact_cap"},
             ctx);
  BenchmarkConfig config;
  config.game = require(document, "game", ctx);
  config.groups = require(document, "groups", ctx);
  const json& methods = require(document, "methods", ctx);
  if (!methods.is_array() || methods.empty()) {
    throw ConfigError(ctx + ": methods must be a non-empty array");
  }
  for (const auto& m : methods) {
    MethodSpec spec;
    if (m.is_string()) {
      spec.name = m.get<std::string>();
    } else {
      check_keys(m, {"name", "s_bar", "m"}, "method");
      spec.name = field<std::string>(m, "name", "method");
      if (m.contains("s_bar")) spec.s_bar = positive_int(m, "s_bar", "method");
      if (m.contains("m")) {
        spec.m = field<std::uint64_t>(m, "m", "method");
        if (*spec.m < 1) throw ConfigError("method.m must be >= 1");
      }
    }
    if (spec.name != "fgsv" && !parse_baseline(spec.name)) {
      throw ConfigError(ctx + ": unknown method '" + spec.name + "'");
    }
    if (spec.name != "fgsv" && !m.is_string() && (m.contains("s_bar") || m.contains("m"))) {
      throw ConfigError(ctx + ": s_bar and m apply to fgsv only");
    }
    for (const auto& other : config.methods) {
      if (other.name == spec.name) throw ConfigError(ctx + ": duplicate method '" + spec.name + "'");
    }
    config.methods.push_back(spec);
  }
  config.budget = field_or<std::uint64_t>(document, "budget", config.budget, ctx);
  config.checkpoints = field_or<std::uint64_t>(document, "checkpoints", config.checkpoints, ctx);
  config.replications = field_or<int>(document, "replications", config.replications, ctx);
  config.seed = field_or<std::uint64_t>(document, "seed", config.seed, ctx);
  if (document.contains("reference_budget")) {
    config.reference_budget = field<std::uint64_t>(document, "reference_budget", ctx);
  }
  config.exact_cap = field_or<int>(document, "exact_cap", config.exact_cap, ctx);
  if (config.replications < 1) throw ConfigError(ctx + ": replications must be >= 1");
  if (config.checkpoints < 1) throw ConfigError(ctx + ": checkpoints must be >= 1");
  return config;
}

namespace {

struct Truth {
  std::vector<double> values;
  std::string source;
};

Truth ground_truth(const Game& game, const Partition& partition, const BenchmarkConfig& config,
                   std::uint64_t seed) {
  Truth truth;
  Eigen::VectorXd sv;
  if (const auto* sou = dynamic_cast<const SouGame*>(&game)) {
    sv = sou_exact_sv(*sou);
    truth.source = "closed_form";
  } else if (game.size() <= config.exact_cap) {
    sv = exact_sv(game, config.exact_cap);
    truth.source = "exact";
  }
  if (sv.size() > 0) {
    for (const auto& g : partition.groups()) truth.values.push_back(group_sum(sv, g));
    return truth;
  }
  if (!config.reference_budget) {
    throw ConfigError("no ground truth: n = " + std::to_string(game.size()) +
                      " exceeds exact_cap and no reference_budget is set");
  }
  int s_bar = 10;
  for (const auto& m : config.methods) {
    if (m.name == "fgsv") {
      s_bar = m.s_bar;
      break;
    }
  }
  truth.source = "reference";
  for (int k = 0; k < partition.size(); ++k) {
    const auto& g = partition.group(k);
    EstimatorConfig ec = config_for_budget(game.size(), static_cast<int>(g.size()),
                                           std::min(s_bar, game.size()), *config.reference_budget);
    ec.seed = mix_seed(seed, 0x7EF0000u + static_cast<std::uint64_t>(k));
    truth.values.push_back(estimate_fgsv(game, g, ec).value);
  }
  return truth;
}

struct ReplicationOutput {
  std::vector<BenchmarkRow> rows;
  std::vector<CurveRow> curves;
};

void add_curve_rows(ReplicationOutput& out, const std::string& method, int group_id,
                    int replication, const ConvergenceCurve& curve, std::size_t count,
                    double truth) {
  for (std::size_t c = 0; c < count; ++c) {
    const Checkpoint& cp = curve.checkpoints()[c];
    out.curves.push_back({method, group_id, replication, static_cast<int>(c + 1),
                          cp.evaluations, cp.estimate, are(cp.estimate, truth)});
  }
}

}  // namespace

BenchmarkResult run_benchmark(const BenchmarkConfig& config, const RunOptions& options) {
  const std::uint64_t seed = options.seed.value_or(config.seed);
  const std::unique_ptr<Game> game = make_game(seeded_game_spec(config.game, seed));
  const int n = game->size();
  const Partition partition = make_partition(config.groups, n);
  const int groups = partition.size();

  // Budget checks up front so nothing runs on an invalid config.
  const std::uint64_t group_budget = config.budget / groups;
  const std::uint64_t baseline_interval = config.budget / config.checkpoints;
  const std::uint64_t group_interval = group_budget / config.checkpoints;
  for (const auto& m : config.methods) {
    if (m.name == "fgsv") {
      if (group_interval == 0) {
        throw ConfigError("budget per group is smaller than the number of checkpoints");
      }
      if (!m.m) {
        for (const auto& g : partition.groups()) {
          const int s0 = static_cast<int>(g.size());
          EstimatorConfig probe = config_for_budget(n, s0, m.s_bar, group_budget);
          if (predicted_evaluations(n, s0, probe) > group_budget) {
            throw ConfigError("budget per group is too small for fgsv with s_bar = " +
                              std::to_string(m.s_bar));
          }
        }
      }
    } else {
      const BaselineMethod method = *parse_baseline(m.name);
      if (config.budget < minimum_budget(method, n)) {
        throw ConfigError("budget is below the minimum for " + m.name);
      }
      if (baseline_interval == 0) {
        throw ConfigError("budget is smaller than the number of checkpoints");
      }
    }
  }

  BenchmarkResult result;
  result.seed = seed;
  const Truth truth = ground_truth(*game, partition, config, seed);
  result.truths = truth.values;
  result.truth_source = truth.source;

  auto run_replication = [&](int r) {
    ReplicationOutput out;
    const std::uint64_t rep_seed = mix_seed(seed, static_cast<std::uint64_t>(r));
    for (std::size_t mi = 0; mi < config.methods.size(); ++mi) {
      const MethodSpec& m = config.methods[mi];
      if (m.name == "fgsv") {
        for (int k = 0; k < groups; ++k) {
          const auto& g = partition.group(k);
          const int s0 = static_cast<int>(g.size());
          EstimatorConfig ec = config_for_budget(n, s0, m.s_bar, group_budget);
          if (m.m) ec.m1 = ec.m2 = *m.m;
          ec.seed = mix_seed(rep_seed, static_cast<std::uint64_t>(k));
          ec.checkpoint_interval = group_interval;
          const auto start = std::chrono::steady_clock::now();
          FgsvEstimate est = estimate_fgsv(*game, g, ec);
          const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                              std::chrono::steady_clock::now() - start).count();
          est.curve.extend_to(config.checkpoints, group_interval);
          const double t = truth.values[k];
          out.rows.push_back({m.name, n, k + 1, r, rep_seed, est.evaluations_used, est.value, t,
                              are(est.value, t), aucc(est.curve, t, config.checkpoints),
                              truth.source, ns,
                              est.evaluations_used ? double(ns) / est.evaluations_used : 0.0});
          add_curve_rows(out, m.name, k + 1, r, est.curve, config.checkpoints, t);
        }
      } else {
        const BaselineMethod method = *parse_baseline(m.name);
        Rng rng = derive_rng(rep_seed, 0xB000u + static_cast<std::uint64_t>(method));
        const auto start = std::chrono::steady_clock::now();
        const SvEstimate est = run_baseline(method, *game, config.budget, rng, baseline_interval);
        const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                            std::chrono::steady_clock::now() - start).count();
        for (int k = 0; k < groups; ++k) {
          const auto& g = partition.group(k);
          ConvergenceCurve curve = group_curve(est, g);
          curve.extend_to(config.checkpoints, baseline_interval);
          const double value = group_sum(est, g);
          const double t = truth.values[k];
          out.rows.push_back({m.name, n, k + 1, r, rep_seed, est.evaluations_used, value, t,
                              are(value, t), aucc(curve, t, config.checkpoints), truth.source,
                              ns, est.evaluations_used ? double(ns) / est.evaluations_used : 0.0});
          add_curve_rows(out, m.name, k + 1, r, curve, config.checkpoints, t);
        }
      }
    }
    return out;
  };

  std::vector<ReplicationOutput> outputs(config.replications);
  const int threads = std::clamp(options.threads, 1, config.replications);
  if (threads == 1) {
    for (int r = 0; r < config.replications; ++r) outputs[r] = run_replication(r);
  } else {
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(threads);
    {
      std::vector<std::jthread> workers;
      for (int w = 0; w < threads; ++w) {
        workers.emplace_back([&, w] {
          try {
            for (int r = next++; r < config.replications; r = next++) {
              outputs[r] = run_replication(r);
            }
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  // Deterministic order: method (config order), replication, group.
  for (std::size_t mi = 0; mi < config.methods.size(); ++mi) {
    for (const auto& out : outputs) {
      for (const auto& row : out.rows) {
        if (row.method == config.methods[mi].name) result.rows.push_back(row);
      }
      for (const auto& row : out.curves) {
        if (row.method == config.methods[mi].name) result.curves.push_back(row);
      }
    }
  }
  for (const auto& m : config.methods) {
    for (int k = 1; k <= groups; ++k) {
      std::vector<const BenchmarkRow*> picked;
      for (const auto& row : result.rows) {
        if (row.method == m.name && row.group_id == k) picked.push_back(&row);
      }
      SummaryRow s;
      s.method = m.name;
      s.group_id = k;
      s.replications = static_cast<int>(picked.size());
      auto mean_sd = [&](auto get, double& mean, double& sd) {
        mean = 0.0;
        for (auto* p : picked) mean += get(*p);
        mean /= picked.size();
        double ss = 0.0;
        for (auto* p : picked) ss += (get(*p) - mean) * (get(*p) - mean);
        sd = picked.size() > 1 ? std::sqrt(ss / (picked.size() - 1)) : 0.0;
      };
      double unused = 0.0;
      mean_sd([](const BenchmarkRow& r) { return r.abs_rel_err; }, s.mean_are, s.sd_are);
      mean_sd([](const BenchmarkRow& r) { return r.aucc; }, s.mean_aucc, s.sd_aucc);
      mean_sd([](const BenchmarkRow& r) { return r.ns_per_eval; }, s.mean_ns_per_eval, unused);
      result.summary.push_back(s);
    }
  }
  return result;
}

std::vector<std::pair<std::string, double>> mean_are_by_method(const BenchmarkResult& result) {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& s : result.summary) {
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& p) { return p.first == s.method; });
    if (it == out.end()) {
      out.emplace_back(s.method, 0.0);
      it = out.end() - 1;
    }
  }
  for (auto& [method, value] : out) {
    int count = 0;
    for (const auto& s : result.summary) {
      if (s.method == method) {
        value += s.mean_are;
        ++count;
      }
    }
    value /= count;
  }
  return out;
}

std::string results_csv(const BenchmarkResult& result) {
  std::ostringstream out;
  out << "method,n,group_id,replication,seed,evaluations,estimate,truth,abs_rel_err,aucc,"
         "truth_source,wall_time_ns,ns_per_eval\n";
  for (const auto& r : result.rows) {
    out << r.method << ',' << r.n << ',' << r.group_id << ',' << r.replication << ',' << r.seed
        << ',' << r.evaluations << ',' << format_double(r.estimate) << ','
        << format_double(r.truth) << ',' << format_double(r.abs_rel_err) << ','
        << format_double(r.aucc) << ',' << r.truth_source << ',' << r.wall_time_ns << ','
        << format_double(r.ns_per_eval) << '\n';
  }
  return out.str();
}

std::string summary_csv(const BenchmarkResult& result) {
  std::ostringstream out;
  out << "method,group_id,replications,mean_are,sd_are,mean_aucc,sd_aucc,mean_ns_per_eval\n";
  for (const auto& s : result.summary) {
    out << s.method << ',' << s.group_id << ',' << s.replications << ','
        << format_double(s.mean_are) << ',' << format_double(s.sd_are) << ','
        << format_double(s.mean_aucc) << ',' << format_double(s.sd_aucc) << ','
        << format_double(s.mean_ns_per_eval) << '\n';
  }
  return out.str();
}

std::string curves_csv(const BenchmarkResult& result) {
  std::ostringstream out;
  out << "method,group_id,replication,checkpoint,evaluations,estimate,abs_rel_err\n";
  for (const auto& c : result.curves) {
    out << c.method << ',' << c.group_id << ',' << c.replication << ',' << c.checkpoint << ','
        << c.evaluations << ',' << format_double(c.estimate) << ','
        << format_double(c.abs_rel_err) << '\n';
  }
  return out.str();
}

void write_benchmark(const BenchmarkResult& result, const json& config,
                     const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  write_text(out_dir / "results.csv", results_csv(result));
  write_text(out_dir / "summary.csv", summary_csv(result));
  write_text(out_dir / "curves.csv", curves_csv(result));
  json manifest = {{"tool_version", kToolVersion},
                   {"schema_version", kSchemaVersion},
                   {"seed", result.seed},
                   {"timestamp", utc_timestamp()},
                   {"truth_source", result.truth_source},
                   {"truths", result.truths},
                   {"files", {"results.csv", "summary.csv", "curves.csv"}},
                   {"config", config}};
  write_text(out_dir / "manifest.json", manifest.dump(2) + "\n");
}

AttackReport run_attack_cmd(const json& document, const RunOptions& options,
                            const std::optional<std::filesystem::path>& out_dir) {
  const std::string ctx = "attack config";
  check_schema(document, ctx);
  check_keys(document,
             {"schema_version", "ubar", "game", "group_sizes", "groups", "target_group", "pieces",
              "seed"},
             ctx);
  const std::uint64_t seed =
      options.seed.value_or(field_or<std::uint64_t>(document, "seed", 0, ctx));
  const int target = positive_int(document, "target_group", ctx) - 1;
  const auto pieces = field<std::vector<int>>(document, "pieces", ctx);
  if (pieces.empty()) throw ConfigError(ctx + ": pieces must not be empty");
  std::vector<SplitSchedule> schedules;
  for (int p : pieces) schedules.push_back({target, p});

  AttackReport report;
  try {
    if (document.contains("ubar")) {
      if (document.contains("game")) throw ConfigError(ctx + ": give either ubar or game");
      const auto sizes = field<std::vector<int>>(document, "group_sizes", ctx);
      if (target >= static_cast<int>(sizes.size())) {
        throw ConfigError(ctx + ": target_group out of range");
      }
      report = run_attack(make_expected_utility(document.at("ubar")), sizes, schedules);
    } else {
      const auto game = make_game(seeded_game_spec(require(document, "game", ctx), seed));
      const Partition partition = make_partition(require(document, "groups", ctx), game->size());
      if (target >= partition.size()) throw ConfigError(ctx + ": target_group out of range");
      report = run_attack(*game, partition, schedules);
    }
  } catch (const DomainError& e) {
    throw ConfigError(ctx + ": " + e.what());
  }
  if (out_dir) {
    const std::string stamp = utc_timestamp();
    std::filesystem::create_directories(*out_dir);
    write_text(*out_dir / "attack.csv", attack_csv(report, seed, stamp));
    json j = to_json(report);
    j["seed"] = seed;
    j["tool_version"] = kToolVersion;
    j["timestamp"] = stamp;
    j["config"] = document;
    write_text(*out_dir / "attack.json", j.dump(2) + "\n");
  }
  return report;
}

std::string attack_csv(const AttackReport& report, std::uint64_t seed,
                       const std::string& timestamp) {
  std::ostringstream out;
  out << "pieces,group_id,role,size,gsv,fgsv,prudent,seed,version,timestamp\n";
  for (const auto& r : report.rows) {
    out << r.pieces << ',' << r.group + 1 << ',' << r.role << ',' << r.size << ','
        << format_double(r.gsv) << ',' << format_double(r.fgsv) << ','
        << (report.prudent ? "true" : "false") << ',' << seed << ',' << kToolVersion << ','
        << timestamp << '\n';
  }
  return out.str();
}

std::vector<AxiomReport> run_axioms_cmd(const json& document,
                                        const std::optional<std::filesystem::path>& out_dir) {
  const std::string ctx = "axioms config";
  check_schema(document, ctx);
  check_keys(document, {"schema_version", "game", "partitions", "methods", "tolerance"}, ctx);
  const auto game = make_game(seeded_game_spec(require(document, "game", ctx), 0));
  const json& specs = require(document, "partitions", ctx);
  if (!specs.is_array() || specs.empty()) {
    throw ConfigError(ctx + ": partitions must be a non-empty array");
  }
  std::vector<Partition> partitions;
  for (const auto& spec : specs) partitions.push_back(make_partition(spec, game->size()));
  const auto methods = field_or<std::vector<std::string>>(
      document, "methods", std::vector<std::string>{"fgsv", "gsv"}, ctx);
  AxiomOptions options;
  options.tolerance = field_or<double>(document, "tolerance", options.tolerance, ctx);

  std::vector<AxiomReport> reports;
  for (const auto& name : methods) {
    GroupValuation valuation;
    if (name == "fgsv") {
      valuation = fgsv_valuation();
    } else if (name == "gsv") {
      valuation = gsv_valuation();
    } else {
      throw ConfigError(ctx + ": unknown valuation '" + name + "'");
    }
    reports.push_back(check_axioms(valuation, *game, partitions, options, name));
  }
  if (out_dir) {
    std::filesystem::create_directories(*out_dir);
    json j = json::array();
    for (const auto& r : reports) j.push_back(to_json(r));
    write_text(*out_dir / "axioms.json",
               json{{"tool_version", kToolVersion}, {"reports", j}}.dump(2) + "\n");
  }
  return reports;
}

json run_exact_cmd(const json& document, const std::optional<std::filesystem::path>& out_dir) {
  const std::string ctx = "exact config";
  check_schema(document, ctx);
  check_keys(document, {"schema_version", "game", "groups", "cap"}, ctx);
  const int cap = field_or<int>(document, "cap", kDefaultExactCap, ctx);
  const auto game = make_game(seeded_game_spec(require(document, "game", ctx), 0));
  if (game->size() > cap) {
    throw ConfigError(ctx + ": n = " + std::to_string(game->size()) + " exceeds cap " +
                      std::to_string(cap));
  }
  const Eigen::VectorXd sv = exact_sv(*game, cap);
  json out = {{"n", game->size()},
              {"sv", std::vector<double>(sv.data(), sv.data() + sv.size())},
              {"game", game->describe()}};
  if (document.contains("groups")) {
    const Partition partition = make_partition(document.at("groups"), game->size());
    json groups = json::array();
    for (int k = 0; k < partition.size(); ++k) {
      IndexSet members;
      for (int i : partition.group(k)) members.push_back(i + 1);
      groups.push_back({{"group_id", k + 1},
                        {"members", members},
                        {"fgsv", group_sum(sv, partition.group(k))},
                        {"gsv", exact_gsv(*game, partition, k, cap)}});
    }
    out["groups"] = groups;
  }
  if (out_dir) {
    std::filesystem::create_directories(*out_dir);
    write_text(*out_dir / "exact.json", out.dump(2) + "\n");
  }
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
}

}  // namespace fgsv
