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

#include "fgsv/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "fgsv/errors.hpp"

namespace fgsv {

void ConvergenceCurve::record(std::uint64_t evaluations, double estimate,
                              std::int64_t wall_time_ns) {
  if (!checkpoints_.empty() && evaluations <= checkpoints_.back().evaluations) {
    throw std::invalid_argument("checkpoint evaluation counts must increase");
  }
  checkpoints_.push_back({evaluations, estimate, wall_time_ns});
}

void ConvergenceCurve::extend_to(std::size_t count, std::uint64_t interval) {
  if (interval == 0) throw std::invalid_argument("extend_to: interval must be positive");
  const double last = checkpoints_.empty() ? 0.0 : checkpoints_.back().estimate;
  const std::int64_t last_ns = checkpoints_.empty() ? 0 : checkpoints_.back().wall_time_ns;
  while (checkpoints_.size() < count) {
    std::uint64_t at = (checkpoints_.size() + 1) * interval;
    if (!checkpoints_.empty() && at <= checkpoints_.back().evaluations) {
      at = checkpoints_.back().evaluations + interval;
    }
    checkpoints_.push_back({at, last, last_ns});
  }
}

double are(double final_estimate, double truth) {
  if (truth == 0.0) throw NumericError("relative error undefined for a zero true value");
  return std::abs((truth - final_estimate) / truth);
}

double aucc(const ConvergenceCurve& curve, double truth, std::size_t num_checkpoints) {
  if (truth == 0.0) throw NumericError("AUCC undefined for a zero true value");
  if (num_checkpoints == 0) throw std::invalid_argument("AUCC needs at least one checkpoint");
  if (curve.size() < num_checkpoints) {
    throw std::invalid_argument("AUCC: curve has " + std::to_string(curve.size()) +
                                " checkpoints, need " + std::to_string(num_checkpoints));
  }
  double total = 0.0;
  for (std::size_t c = 0; c < num_checkpoints; ++c) {
    total += std::abs((truth - curve.checkpoints()[c].estimate) / truth);
  }
  return total / static_cast<double>(num_checkpoints);
}

RoyaltyShares royalty_shares(const Eigen::VectorXd& group_values) {
  const double sum = group_values.sum();
  if (sum == 0.0 || !std::isfinite(sum)) {
    throw NumericError("royalty shares need a finite, nonzero total value");
  }
  RoyaltyShares out;
  out.shares = group_values / sum;
  out.outside_unit_interval = ((out.shares.array() < 0.0) || (out.shares.array() > 1.0)).any();
  return out;
}

}  // namespace fgsv
