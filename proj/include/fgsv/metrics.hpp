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

#ifndef FGSV_METRICS_HPP_
#define FGSV_METRICS_HPP_

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace fgsv {

struct Checkpoint {
  std::uint64_t evaluations = 0;
  double estimate = 0.0;
  std::int64_t wall_time_ns = 0;
};

// Estimates recorded at strictly increasing evaluation counts.
class ConvergenceCurve {
 public:
  // Throws std::invalid_argument if `evaluations` does not increase.
  void record(std::uint64_t evaluations, double estimate, std::int64_t wall_time_ns = 0);

  const std::vector<Checkpoint>& checkpoints() const noexcept { return checkpoints_; }
  std::size_t size() const noexcept { return checkpoints_.size(); }
  bool empty() const noexcept { return checkpoints_.empty(); }
  const Checkpoint& back() const { return checkpoints_.back(); }

  // Extends the curve to `count` checkpoints at multiples of `interval`,
  // repeating the last estimate. Used once a method has stopped spending
  // budget before the nominal end.
  void extend_to(std::size_t count, std::uint64_t interval);

 private:
  std::vector<Checkpoint> checkpoints_;
};

// Mean absolute relative error over the first num_checkpoints checkpoints.
// Throws NumericError for truth == 0, std::invalid_argument for a short curve.
double aucc(const ConvergenceCurve& curve, double truth, std::size_t num_checkpoints = 100);

// |(truth - estimate) / truth|.
double are(double final_estimate, double truth);

struct RoyaltyShares {
  Eigen::VectorXd shares;
  // Some group value was negative, so a share falls outside [0, 1].
  bool outside_unit_interval = false;
};

// value_k / sum_j value_j. SRS when fed GSVs, FSRS when fed FGSVs.
RoyaltyShares royalty_shares(const Eigen::VectorXd& group_values);

}  // namespace fgsv

#endif  // FGSV_METRICS_HPP_
