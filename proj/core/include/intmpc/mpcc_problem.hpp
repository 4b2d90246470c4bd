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

#include <memory>
#include <string>
#include <vector>

#include "intmpc/reference_path.hpp"
#include "intmpc/types.hpp"

namespace intmpc {

// Quadratic stage cost weights: contour error, lag error, velocity
// reference tracking, acceleration, steering.
struct MpccWeights {
  double q_c = 2.0;
  double q_l = 2.0;
  double q_v = 1.0;
  double q_u = 0.2;
  double q_delta = 5.0;
};

// One predicted obstacle over the horizon: an ellipse (body half axes
// enlarged by the ego disc radius) swept along per-stage centers.
struct ObstacleEllipse {
  double phi = 0.0;    // orientation, rad
  double alpha = 0.0;  // enlarged semi-major axis, m
  double beta = 0.0;   // enlarged semi-minor axis, m
  std::vector<Vec2> centers;  // one per stage, k = 0..H
};

// Ego body decomposition into discs along the heading axis.
struct EgoDiscs {
  double radius = 1.2;
  std::vector<double> offsets = {-1.6, 0.0, 1.6};
};

struct MpccProblem {
  VehicleState initial_state;
  double initial_lambda = 0.0;
  double v_ref = 2.0;
  MpccWeights weights;
  std::shared_ptr<const ReferencePath> path;
  double w_left = 1.75;   // road bounds: -w_left <= e_c <= w_right
  double w_right = 1.75;
  std::vector<ObstacleEllipse> obstacles;
  VehicleLimits limits;
  int horizon = 15;
  double dt = 0.1;
  EgoDiscs discs;
};

enum class SolveStatus { kFeasible, kInfeasible, kMaxIterations };

const char* to_string(SolveStatus s);

struct SqpIterationRecord {
  int iteration = 0;
  double cost = 0.0;
  double merit = 0.0;
  double kkt = 0.0;
  double violation = 0.0;
  double step_norm = 0.0;
  double penalty = 0.0;
};

struct MpccSolution {
  std::vector<ControlInput> controls;   // u_0 .. u_{H-1}
  std::vector<VehicleState> states;     // s_0 .. s_H
  std::vector<double> lambdas;          // lambda_0 .. lambda_H
  SolveStatus status = SolveStatus::kInfeasible;
  double cost = 0.0;
  double kkt_residual = 0.0;
  double max_violation = 0.0;
  int iterations = 0;
  std::vector<SqpIterationRecord> log;  // filled when the solver records

  bool usable() const { return status != SolveStatus::kInfeasible; }
};

// J(s, u, lambda) of the contouring controller. The terminal stage uses the
// same expression with the control terms dropped.
double stage_cost(const VehicleState& s, const ControlInput& u, double lambda,
                  double v_ref, const MpccWeights& w, const ReferencePath& path);
double terminal_cost(const VehicleState& s, double lambda, double v_ref,
                     const MpccWeights& w, const ReferencePath& path);

// Center of ego disc `offset` meters ahead of the body center.
Vec2 disc_center(const VehicleState& s, double offset);

// Quadratic form of the disc/ellipse separation constraint at stage k,
// evaluated in the obstacle frame. Values > 1 are collision free; the
// boundary value is exactly 1 when the disc center sits on the enlarged
// ellipse.
double collision_margin(const Vec2& disc, const ObstacleEllipse& obstacle, int stage);

// Standalone problem files for solver regression tests.
void save_problem(const MpccProblem& p, const std::string& path);
MpccProblem load_problem(const std::string& path);

// Line-delimited CSV of the per-iteration solver records.
void save_solver_log(const std::vector<SqpIterationRecord>& log, const std::string& path);

}  // namespace intmpc
