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

#ifndef FGSV_SERIALIZATION_HPP_
#define FGSV_SERIALIZATION_HPP_

#include <string>

#include <nlohmann/json.hpp>

#include "fgsv/baselines.hpp"
#include "fgsv/estimator.hpp"
#include "fgsv/metrics.hpp"

namespace fgsv {

nlohmann::json to_json(const ConvergenceCurve& curve);
nlohmann::json to_json(const FgsvEstimate& estimate);
nlohmann::json to_json(const SvEstimate& estimate);

// 17 significant digits, so values round-trip through text.
std::string format_double(double value);

}  // namespace fgsv

#endif  // FGSV_SERIALIZATION_HPP_
