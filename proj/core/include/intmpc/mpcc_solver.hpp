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

#include <vector>

#include "intmpc/mpcc_problem.hpp"

namespace intmpc {

struct SqpSettings {
  int max_iterations = 50;
  double kkt_tol = 1e-6;
  double constraint_tol = 1e-4;       // feasibility gate on the reported solution
  double infeasible_violation = 1e-2; // stalling above this reads as infeasible
  double penalty_initial = 100.0;
  double penalty_max = 1e7;
  double margin_screen_band = 1.0;    // linearize ellipse rows with margin < 1 + band
  double road_screen_band = 0.75;     // linearize road rows within this slack, m
  bool record_log = false;
};

// Sequential quadratic programming over the control sequence. States are
// eliminated through the single-shooting RK4 map, the cost enters with its
// Gauss-Newton Hessian, and road/ellipse constraints are handled as L1
// penalties with slack variables inside a dense active-set QP, driven by a
// line search on the exact-penalty merit function.
//
// A solver instance owns scratch storage and is single threaded; run one
// instance per simulation worker.
class MpccSolver {
 public:
  explicit MpccSolver(const SqpSettings& settings = {}) : settings_(settings) {}

  MpccSolution solve(const MpccProblem& problem,
                     const std::vector<ControlInput>* initial_controls = nullptr);

  const SqpSettings& settings() const { return settings_; }
  SqpSettings& settings() { return settings_; }

 private:
  SqpSettings settings_;
};

// Shooting-map rollout shared with tests: states and progress under the
// given controls, plus their sensitivities with respect to the stacked
// control vector (a_0, delta_0, a_1, ...).
struct ShootingRollout {
  std::vector<VehicleState> states;   // H+1
  std::vector<double> lambdas;        // H+1
  std::vector<Eigen::MatrixXd> state_sens;     // per stage, 4 x 2H
  std::vector<Eigen::RowVectorXd> lambda_sens; // per stage, 1 x 2H
};
ShootingRollout shoot(const MpccProblem& problem,
                      const std::vector<ControlInput>& controls,
                      bool with_sensitivities);

}  // namespace intmpc
