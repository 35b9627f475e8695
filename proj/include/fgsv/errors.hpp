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

#ifndef FGSV_ERRORS_HPP_
#define FGSV_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace fgsv {

// Invalid index sets, infeasible (s, s1) configurations, out-of-range players.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Operation not available for this game type (e.g. augmenting a SOU game).
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Singular systems that survive the ridge fallback, undefined metrics.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed experiment configuration. Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File and CSV ingestion failures.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fgsv

#endif  // FGSV_ERRORS_HPP_
