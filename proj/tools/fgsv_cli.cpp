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

// fgsv: batch driver for benchmarks, shell-company attacks, axiom checks and
// exact valuations. Exit codes: 0 ok, 2 config/validation error, 3 numeric
// error, 1 anything else.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fgsv/errors.hpp"
#include "fgsv/experiment.hpp"
#include "fgsv/serialization.hpp"

namespace {

constexpr int kConfigExit = 2;
constexpr int kNumericExit = 3;

int default_threads() {
  if (const char* env = std::getenv("FGSV_THREADS")) {
    try {
      const int value = std::stoi(env);
      if (value >= 1) return value;
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring invalid FGSV_THREADS='" << env << "'\n";
  }
  return 1;
}

struct Common {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  int threads = default_threads();
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "JSON config file")->required();
  cmd->add_option("--out", c.out, "output directory");
  cmd->add_option("--seed", c.seed, "override the config seed");
  cmd->add_option("--threads", c.threads, "worker threads (default $FGSV_THREADS or 1)")
      ->check(CLI::PositiveNumber);
}

std::optional<std::filesystem::path> out_dir(const Common& c) {
  if (c.out.empty()) return std::nullopt;
  return std::filesystem::path(c.out);
}

int bench(const Common& c) {
  const nlohmann::json document = fgsv::read_json_file(c.config);
  const fgsv::BenchmarkConfig config = fgsv::parse_benchmark_config(document);
  const fgsv::BenchmarkResult result = fgsv::run_benchmark(config, {c.seed, c.threads});
  if (auto dir = out_dir(c)) fgsv::write_benchmark(result, document, *dir);
  std::cout << fgsv::summary_csv(result);
  std::cout << "# truth source: " << result.truth_source << "\n";
  for (const auto& [method, value] : fgsv::mean_are_by_method(result)) {
    std::cout << "# mean ARE " << method << " " << fgsv::format_double(value) << "\n";
  }
  return 0;
}

int attack(const Common& c) {
  const nlohmann::json document = fgsv::read_json_file(c.config);
  const fgsv::AttackReport report = fgsv::run_attack_cmd(document, {c.seed, c.threads}, out_dir(c));
  std::cout << "prudent " << (report.prudent ? "yes" : "no") << "\n";
  std::cout << "pieces attacker_gsv victim_gsv attacker_fgsv victim_fgsv\n";
  for (const auto& o : report.outcomes) {
    std::cout << o.pieces << ' ' << fgsv::format_double(o.attacker_gsv) << ' '
              << fgsv::format_double(o.victim_gsv) << ' ' << fgsv::format_double(o.attacker_fgsv)
              << ' ' << fgsv::format_double(o.victim_fgsv) << "\n";
  }
  std::cout << "gsv_inflated " << report.gsv_inflated << " gsv_monotone " << report.gsv_monotone
            << " fgsv_constant " << report.fgsv_constant << "\n";
  return 0;
}

int axioms(const Common& c) {
  const nlohmann::json document = fgsv::read_json_file(c.config);
  for (const auto& report : fgsv::run_axioms_cmd(document, out_dir(c))) {
    for (const auto& r : report.results) {
      std::cout << report.valuation << ' ' << r.axiom << ' ' << (r.passed ? "pass" : "FAIL")
                << " max_violation=" << fgsv::format_double(r.max_violation) << "\n";
    }
  }
  return 0;
}

int exact(const Common& c) {
  const nlohmann::json document = fgsv::read_json_file(c.config);
  std::cout << fgsv::run_exact_cmd(document, out_dir(c)).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Faithful group Shapley value toolkit"};
  app.set_version_flag("--version", std::string(fgsv::kToolVersion));
  app.require_subcommand(1);
  Common common;
  auto* bench_cmd = app.add_subcommand("bench", "run an estimator benchmark");
  auto* attack_cmd = app.add_subcommand("attack", "compare GSV and FGSV under group splits");
  auto* axioms_cmd = app.add_subcommand("axioms", "check valuation axioms on a small game");
  auto* exact_cmd = app.add_subcommand("exact", "exact SV, FGSV and GSV by enumeration");
  for (auto* cmd : {bench_cmd, attack_cmd, axioms_cmd, exact_cmd}) add_common(cmd, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigExit;
  }

  try {
    if (*bench_cmd) return bench(common);
    if (*attack_cmd) return attack(common);
    if (*axioms_cmd) return axioms(common);
    return exact(common);
  } catch (const fgsv::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kNumericExit;
  } catch (const fgsv::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigExit;
  } catch (const fgsv::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kConfigExit;
  } catch (const fgsv::DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kConfigExit;
  } catch (const fgsv::UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kConfigExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
