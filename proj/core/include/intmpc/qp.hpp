// Copyright 2026 The IntMPC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>

namespace intmpc {

struct QpResult {
  Eigen::VectorXd x;
  Eigen::VectorXd multipliers;  // one per constraint row, 0 when inactive
  bool solved = false;
  int iterations = 0;
};

// Strictly convex quadratic program
//
//   min 1/2 x^T Q x + c^T x   s.t.  A x >= b
//
// solved with a dense primal active-set method. `x0` must be feasible;
// the caller constructs one (the planner starts from a zero step with
// slacks absorbing any violation).
QpResult solve_qp(const Eigen::MatrixXd& Q, const Eigen::VectorXd& c,
                  const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                  const Eigen::VectorXd& x0, int max_iterations = 400);

}  // namespace intmpc
