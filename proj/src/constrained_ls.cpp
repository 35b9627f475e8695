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

#include "fgsv/constrained_ls.hpp"

#include <stdexcept>

#include "fgsv/errors.hpp"

namespace fgsv {
namespace {

bool usable(const Eigen::LDLT<Eigen::MatrixXd>& ldlt, const Eigen::MatrixXd& a) {
  if (ldlt.info() != Eigen::Success) return false;
  const Eigen::VectorXd d = ldlt.vectorD().cwiseAbs();
  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
  return d.minCoeff() > 1e-13 * scale;
}

Eigen::VectorXd solve_with(const Eigen::LDLT<Eigen::MatrixXd>& ldlt, const Eigen::VectorXd& b,
                           double total) {
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(b.size());
  const Eigen::VectorXd a_inv_b = ldlt.solve(b);
  const Eigen::VectorXd a_inv_1 = ldlt.solve(ones);
  const double shift = (ones.dot(a_inv_b) - total) / ones.dot(a_inv_1);
  return a_inv_b - shift * a_inv_1;
}

}  // namespace

Eigen::VectorXd solve_constrained_ls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                     double total, std::vector<std::string>* warnings) {
  if (a.rows() != a.cols() || a.rows() != b.size() || b.size() == 0) {
    throw std::invalid_argument("solve_constrained_ls: dimension mismatch");
  }
  Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
  if (usable(ldlt, a)) return solve_with(ldlt, b, total);

  const Eigen::MatrixXd ridged =
      a + 1e-10 * Eigen::MatrixXd::Identity(a.rows(), a.cols());
  ldlt.compute(ridged);
  if (ldlt.info() != Eigen::Success || ldlt.vectorD().cwiseAbs().minCoeff() == 0.0) {
    throw NumericError("solve_constrained_ls: matrix is singular even with a ridge");
  }
  const Eigen::VectorXd x = solve_with(ldlt, b, total);
  if (!x.allFinite()) throw NumericError("solve_constrained_ls: non-finite solution");
  if (warnings != nullptr) warnings->push_back("singular Gram matrix, solved with a 1e-10 ridge");
  return x;
}

}  // namespace fgsv
