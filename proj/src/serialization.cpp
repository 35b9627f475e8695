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

#include "fgsv/serialization.hpp"

#include <cstdio>

namespace fgsv {

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

nlohmann::json to_json(const ConvergenceCurve& curve) {
  auto out = nlohmann::json::array();
  for (const auto& c : curve.checkpoints()) {
    out.push_back({{"evaluations", c.evaluations},
                   {"estimate", c.estimate},
                   {"wall_time_ns", c.wall_time_ns}});
  }
  return out;
}

nlohmann::json to_json(const FgsvEstimate& estimate) {
  return {{"value", estimate.value},
          {"per_s_terms", estimate.per_s_terms},
          {"evaluations_used", estimate.evaluations_used},
          {"standard_error", estimate.standard_error},
          {"curve", to_json(estimate.curve)},
          {"warnings", estimate.warnings}};
}

nlohmann::json to_json(const SvEstimate& estimate) {
  std::vector<double> values(estimate.values.data(),
                             estimate.values.data() + estimate.values.size());
  nlohmann::json j = {{"values", values},
                      {"evaluations_used", estimate.evaluations_used},
                      {"snapshots", estimate.snapshots.size()},
                      {"warnings", estimate.warnings}};
  if (estimate.dummy_value) j["dummy_value"] = *estimate.dummy_value;
  return j;
}

}  // namespace fgsv
