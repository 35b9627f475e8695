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

#include "fgsv/regression.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "fgsv/errors.hpp"

namespace fgsv {

double AugmentableGame::evaluate_with_nulls(std::span<const int> subset,
                                            std::span<const NullRecord> nulls) const {
  validate(subset);
  count_evaluation();
  return utility_with_nulls(subset, nulls);
}

RegressionGame::RegressionGame(RegressionData train, RegressionData test, double lambda)
    : AugmentableGame(static_cast<int>(train.x.rows())),
      train_(std::move(train)),
      test_(std::move(test)),
      lambda_(lambda) {
  if (lambda_ < 0.0) throw DomainError("ridge penalty must be non-negative");
  if (train_.y.size() != train_.x.rows() || test_.y.size() != test_.x.rows()) {
    throw DomainError("predictor and response row counts differ");
  }
  if (test_.x.cols() != train_.x.cols()) throw DomainError("train/test predictor mismatch");
  if (test_.y.size() == 0) throw DomainError("empty test set");
  const double mean = test_.y.mean();
  null_utility_ = -(test_.y.array() - mean).square().mean();
}

double RegressionGame::score(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) const {
  const Eigen::RowVectorXd x_mean = x.colwise().mean();
  const double y_mean = y.mean();
  const Eigen::MatrixXd xc = x.rowwise() - x_mean;
  const Eigen::VectorXd yc = y.array() - y_mean;
  Eigen::MatrixXd gram = xc.transpose() * xc;
  gram.diagonal().array() += lambda_;
  const Eigen::VectorXd beta = gram.ldlt().solve(xc.transpose() * yc);
  const double intercept = y_mean - x_mean.dot(beta);
  const Eigen::VectorXd residual =
      (test_.x * beta).array() + intercept - test_.y.array();
  const double mse = residual.squaredNorm() / static_cast<double>(residual.size());
  return std::isfinite(mse) ? -mse : null_utility_;
}

double RegressionGame::utility(std::span<const int> subset) const {
  return utility_with_nulls(subset, {});
}

double RegressionGame::utility_with_nulls(std::span<const int> subset,
                                          std::span<const NullRecord> nulls) const {
  const Eigen::Index rows = static_cast<Eigen::Index>(subset.size() + nulls.size());
  if (rows == 0 || rows < train_.x.cols()) return null_utility_;
  Eigen::MatrixXd x(rows, train_.x.cols());
  Eigen::VectorXd y(rows);
  Eigen::Index r = 0;
  for (int i : subset) {
    x.row(r) = train_.x.row(i);
    y[r++] = train_.y[i];
  }
  for (const NullRecord& record : nulls) {
    x.row(r) = train_.x.row(record.feature_row);
    y[r++] = train_.y[record.response_row];
  }
  return score(x, y);
}

std::vector<NullRecord> RegressionGame::draw_null_records(int count, Rng& rng) const {
  std::vector<NullRecord> records(std::max(count, 0));
  const int rows = size();
  for (NullRecord& record : records) {
    record.feature_row = uniform_int(rng, 0, rows - 1);
    record.response_row = uniform_int(rng, 0, rows - 1);
  }
  return records;
}

nlohmann::json RegressionGame::describe() const {
  return {{"type", "regression"},
          {"n", size()},
          {"n_test", test_.y.size()},
          {"predictors", predictors()},
          {"lambda", lambda_},
          {"null_utility", null_utility_}};
}

AugmentedGame::AugmentedGame(const AugmentableGame& base, int threshold, std::uint64_t seed)
    : Game(base.size()), base_(base), threshold_(threshold), rng_(derive_rng(seed, 0xA0u)) {
  if (threshold < 1) throw DomainError("augmentation threshold must be >= 1");
}

double AugmentedGame::utility(std::span<const int> subset) const {
  const int missing = threshold_ - static_cast<int>(subset.size());
  if (missing <= 0) return base_.evaluate(subset);
  std::vector<NullRecord> nulls;
  {
    std::lock_guard<std::mutex> lock(rng_mutex_);
    nulls = base_.draw_null_records(missing, rng_);
  }
  return base_.evaluate_with_nulls(subset, nulls);
}

nlohmann::json AugmentedGame::describe() const {
  return {{"type", "augmented"}, {"threshold", threshold_}, {"base", base_.describe()}};
}

std::unique_ptr<Game> augment_with_null(const Game& game, int threshold, std::uint64_t seed) {
  const auto* base = dynamic_cast<const AugmentableGame*>(&game);
  if (base == nullptr) {
    throw UnsupportedError("augment_with_null: game type does not accept synthetic items");
  }
  return std::make_unique<AugmentedGame>(*base, threshold, seed);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream stream(line);
  while (std::getline(stream, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_cell(std::string cell, std::size_t line_number) {
  const auto first = cell.find_first_not_of(" \t\r");
  const auto last = cell.find_last_not_of(" \t\r");
  if (first == std::string::npos) {
    throw DataError("empty cell on line " + std::to_string(line_number));
  }
  cell = cell.substr(first, last - first + 1);
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw DataError("non-numeric cell '" + cell + "' on line " + std::to_string(line_number));
  }
  return value;
}

RegressionData take_rows(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                         std::span<const int> rows) {
  RegressionData out{Eigen::MatrixXd(rows.size(), x.cols()), Eigen::VectorXd(rows.size())};
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out.x.row(r) = x.row(rows[r]);
    out.y[r] = y[rows[r]];
  }
  return out;
}

}  // namespace

RegressionGame load_regression_csv(const std::string& path, double test_fraction,
                                   double lambda, std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open CSV file: " + path);
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw DataError("test_fraction must lie in (0, 1)");
  }
  std::string line;
  if (!std::getline(in, line)) throw DataError("CSV file has no header: " + path);
  const std::size_t columns = split_csv_line(line).size();
  if (columns < 2) throw DataError("CSV needs at least one predictor and a response column");

  std::vector<std::vector<double>> table;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != columns) {
      throw DataError("line " + std::to_string(line_number) + " has " +
                      std::to_string(cells.size()) + " cells, header has " +
                      std::to_string(columns));
    }
    std::vector<double> row;
    row.reserve(columns);
    for (const auto& cell : cells) row.push_back(parse_cell(cell, line_number));
    table.push_back(std::move(row));
  }

  const int rows = static_cast<int>(table.size());
  const int n_test = static_cast<int>(std::lround(test_fraction * rows));
  const int n_train = rows - n_test;
  if (n_test < 2 || n_train < 2) {
    throw DataError("CSV split leaves fewer than 2 rows in train or test (" +
                    std::to_string(rows) + " rows)");
  }

  const int predictors = static_cast<int>(columns) - 1;
  Eigen::MatrixXd x(rows, predictors);
  Eigen::VectorXd y(rows);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < predictors; ++c) x(r, c) = table[r][c];
    y[r] = table[r][predictors];
  }
  const double mean = y.mean();
  const double sd = std::sqrt((y.array() - mean).square().sum() / rows);
  y.array() -= mean;
  if (sd > 0.0) y /= sd;

  IndexSet order = all_players(rows);
  Rng rng = derive_rng(seed, 0xC5u);
  std::shuffle(order.begin(), order.end(), rng);
  const std::span<const int> all(order);
  return RegressionGame(take_rows(x, y, all.subspan(n_test)), take_rows(x, y, all.first(n_test)),
                        lambda);
}

RegressionGame make_synthetic_regression(int n_train, int n_test, int predictors, double noise,
                                         double lambda, std::uint64_t seed) {
  if (n_train < 1 || n_test < 2 || predictors < 1) {
    throw DomainError("synthetic regression needs n_train >= 1, n_test >= 2, predictors >= 1");
  }
  Rng rng = derive_rng(seed, 0x5Eu);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd beta(predictors);
  for (int k = 0; k < predictors; ++k) beta[k] = 1.0 / (k + 1);
  auto draw = [&](int rows) {
    RegressionData data{Eigen::MatrixXd(rows, predictors), Eigen::VectorXd(rows)};
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < predictors; ++c) data.x(r, c) = normal(rng);
      data.y[r] = data.x.row(r).dot(beta) + noise * normal(rng);
    }
    return data;
  };
  RegressionData train = draw(n_train);
  RegressionData test = draw(n_test);
  return RegressionGame(std::move(train), std::move(test), lambda);
}

}  // namespace fgsv
