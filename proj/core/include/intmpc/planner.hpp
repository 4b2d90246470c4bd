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

#include <optional>

#include "intmpc/mpcc_solver.hpp"
#include "intmpc/traffic_world.hpp"

namespace intmpc {

struct PlannerConfig {
  int horizon = 15;
  double dt = 0.1;
  MpccWeights weights;
  double w_left = 1.75;
  double w_right = 1.75;
  EgoDiscs discs;
  int max_obstacles = 4;          // nearest vehicles become planner obstacles
  double obstacle_radius = 40.0;  // m, beyond this vehicles are ignored
  SqpSettings sqp;
};

struct PlanResult {
  ControlInput control;
  MpccSolution solution;
  bool fallback = false;  // braking command applied instead of the plan
};

// Receding-horizon wrapper around the SQP: builds the stage problem from a
// world snapshot (constant-velocity obstacle predictions with headings held
// fixed), warm starts from the previous cycle shifted by one stage, and
// falls back to the braking command (a_lo, 0) when the solve is infeasible.
class MpccPlanner {
 public:
  explicit MpccPlanner(const PlannerConfig& cfg = {}) : cfg_(cfg), solver_(cfg.sqp) {}

  PlanResult plan(const TrafficWorld& world, double v_ref, bool collision_constraints);

  // Terminal plan ordinate used by the self-prediction model; nullopt when
  // that solve is unusable. Collision constraints are left out and the
  // current speed serves as the reference.
  std::optional<double> predict_terminal_y(const TrafficWorld& world);

  MpccProblem build_problem(const TrafficWorld& world, double v_ref,
                            bool collision_constraints) const;

  // Drop the warm start (call between episodes).
  void reset() { previous_.reset(); }

  const PlannerConfig& config() const { return cfg_; }
  MpccSolver& solver() { return solver_; }

 private:
  PlannerConfig cfg_;
  MpccSolver solver_;
  std::optional<MpccSolution> previous_;
};

}  // namespace intmpc
