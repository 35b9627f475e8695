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

#ifndef FGSV_CONSTRAINED_LS_HPP_
#define FGSV_CONSTRAINED_LS_HPP_

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fgsv {

// argmin x^T A x - 2 b^T x subject to 1^T x = total, i.e.
//   x = A^-1 (b - 1 (1^T A^-1 b - total) / (1^T A^-1 1)).
// A must be symmetric. A singular A is retried with A + 1e-10 I (noted in
// `warnings` if given); NumericError if that fails too.
Eigen::VectorXd solve_constrained_ls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                     double total,
                                     std::vector<std::string>* warnings = nullptr);

}  // namespace fgsv

#endif  // FGSV_CONSTRAINED_LS_HPP_
