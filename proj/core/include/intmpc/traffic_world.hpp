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
#include <optional>
#include <utility>
#include <vector>

#include "intmpc/collision.hpp"
#include "intmpc/idm.hpp"
#include "intmpc/reference_path.hpp"
#include "intmpc/types.hpp"

namespace intmpc {

class MpccPlanner;  // planner.hpp

enum class ScenarioKind { kRampMerge, kUnprotectedLeftTurn };
enum class CoopSetting { kCooperative, kMixed, kNonCooperative };

// How the other drivers estimate the ego's lateral position at the end of
// the planning horizon.
enum class PredictionModel {
  kIdm,                    // reactive: current lateral position
  kConstantVelocity,       // straight-line extrapolation
  kConstantVelocityPath,   // constant speed along the ego reference path
  kMpccSelf,               // terminal state of an unconstrained ego plan
};

// One scripted traffic participant. Longitudinal control only: the lane
// center ordinate and heading never change during an episode.
struct OtherVehicle {
  VehicleState state;
  double coop = 0.0;  // cooperation coefficient c_i, m
  IdmParams idm;
  int id = 0;

  double lane_center_y = 0.0;
  double lane_heading = 0.0;  // 0 or pi

  // Last step_world results, kept for traces.
  double a_cmd = 0.0;
  int leader_id = -1;  // kEgoId for the ego, -1 for free road
};

inline constexpr int kEgoId = 0;

struct EpisodeOutcome {
  enum class Kind { kSuccess, kCollision, kTimeout };
  Kind kind = Kind::kTimeout;
  double time_to_goal = 0.0;  // valid for kSuccess only
};

struct StepEvents {
  std::vector<std::pair<int, int>> collisions;  // id pairs, ego involved or not
  bool ego_collision = false;
  bool reached_goal = false;
};

// Full simulation state of one episode.
struct TrafficWorld {
  ScenarioKind scenario = ScenarioKind::kRampMerge;
  VehicleState ego;
  std::vector<OtherVehicle> others;  // stored in id order, ids 1..n

  // Internal belief of the other drivers about the ego's motion plan:
  // predicted ego ordinate at the end of the planning horizon (world frame).
  double ego_prediction_y = 0.0;

  double clock = 0.0;

  std::shared_ptr<const ReferencePath> path;
  double ego_lambda = 0.0;  // ego progress along the reference path

  // The lane the scripted vehicles drive on.
  double main_lane_y = 0.0;
  double main_lane_heading = 0.0;
  double lane_width = 3.5;

  double goal_lambda = 0.0;  // ramp merge goal gate
  double goal_y = 0.0;       // left turn: body fully above this line
  double timeout = 60.0;
  double prediction_horizon = 1.5;  // s, matches the planner horizon

  VehicleShape shape;
  VehicleLimits limits;

  // Signed position along the main lane direction of travel.
  double lane_longitudinal(const Vec2& p) const {
    return p.x() * std::cos(main_lane_heading) + p.y() * std::sin(main_lane_heading);
  }
};

// Candidate leaders for vehicle `i`: every same-lane vehicle ahead of it,
// plus the ego when the predicted lateral distance to the lane center is
// inside the cooperation coefficient. Returned as vehicle ids.
std::vector<int> leader_candidates(const TrafficWorld& world, int i);

struct LeaderRef {
  int id = -1;
  VehicleState state;
};

// Longitudinally nearest candidate, or nullopt when there is none.
std::optional<LeaderRef> select_leader(const TrafficWorld& world, int i);

// Predicted ego ordinate at the prediction horizon under the given model.
// The MpccSelf variant needs a planner; it falls back to the constant
// velocity estimate when the self plan is not usable.
double predict_ego(const TrafficWorld& world, PredictionModel model,
                   MpccPlanner* self_planner);

// Advance every vehicle by one step: the scripted vehicles follow the
// predictive car-following model against world.ego_prediction_y, the ego
// integrates `ego_control` through the bicycle model. Collision and goal
// checks run on the new state.
StepEvents step_world(TrafficWorld& world, const ControlInput& ego_control, double dt);

// Distance from the ego center to the nearest other vehicle body.
double min_distance_to_others(const TrafficWorld& world);

}  // namespace intmpc
