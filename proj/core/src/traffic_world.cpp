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

#include "intmpc/traffic_world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "intmpc/dynamics.hpp"
#include "intmpc/planner.hpp"

namespace intmpc {

std::vector<int> leader_candidates(const TrafficWorld& world, int i) {
  std::vector<int> out;
  const OtherVehicle& me = world.others[static_cast<std::size_t>(i)];
  const double my_lon = world.lane_longitudinal(me.state.position());

  const double ego_lon = world.lane_longitudinal(world.ego.position());
  const double ego_lat = std::abs(world.ego_prediction_y - world.main_lane_y);
  if (ego_lon > my_lon && ego_lat < me.coop) {
    out.push_back(kEgoId);
  }
  for (const OtherVehicle& other : world.others) {
    if (other.id == me.id) continue;
    if (world.lane_longitudinal(other.state.position()) > my_lon) {
      out.push_back(other.id);
    }
  }
  return out;
}

std::optional<LeaderRef> select_leader(const TrafficWorld& world, int i) {
  const OtherVehicle& me = world.others[static_cast<std::size_t>(i)];
  const double my_lon = world.lane_longitudinal(me.state.position());

  std::optional<LeaderRef> best;
  double best_dist = std::numeric_limits<double>::infinity();
  for (int id : leader_candidates(world, i)) {
    const VehicleState& s =
        id == kEgoId ? world.ego : world.others[static_cast<std::size_t>(id - 1)].state;
    const double dist = std::abs(world.lane_longitudinal(s.position()) - my_lon);
    if (dist < best_dist) {
      best_dist = dist;
      best = LeaderRef{id, s};
    }
  }
  return best;
}

double predict_ego(const TrafficWorld& world, PredictionModel model,
                   MpccPlanner* self_planner) {
  const VehicleState& ego = world.ego;
  const double T = world.prediction_horizon;
  switch (model) {
    case PredictionModel::kIdm:
      return ego.y;
    case PredictionModel::kConstantVelocity:
      return ego.y + T * ego.v * std::sin(ego.psi);
    case PredictionModel::kConstantVelocityPath: {
      const double lam = progress_update(world.ego_lambda, ego.v, T,
                                         world.path->total_length());
      return world.path->point_at(lam).y();
    }
    case PredictionModel::kMpccSelf: {
      if (self_planner != nullptr) {
        if (auto y = self_planner->predict_terminal_y(world)) return *y;
      }
      // Self plan unavailable: constant velocity fallback.
      return ego.y + T * ego.v * std::sin(ego.psi);
    }
  }
  return ego.y;
}

namespace {

// Constant-acceleration displacement that stops at v = 0 instead of
// reversing, with the speed capped at v_max.
void advance_longitudinal(OtherVehicle& veh, double a, double dt, double v_max) {
  double v = veh.state.v;
  double disp = 0.0;
  if (v + a * dt >= 0.0) {
    disp = v * dt + 0.5 * a * dt * dt;
    v = v + a * dt;
  } else {
    const double t_stop = a < 0.0 ? -v / a : 0.0;
    disp = v * t_stop + 0.5 * a * t_stop * t_stop;
    v = 0.0;
  }
  if (v > v_max) {
    v = v_max;
  }
  disp = std::max(disp, 0.0);
  veh.state.x += disp * std::cos(veh.lane_heading);
  veh.state.y += disp * std::sin(veh.lane_heading);
  veh.state.v = v;
}

bool merge_goal_reached(const TrafficWorld& world) {
  if (world.ego_lambda < world.goal_lambda) return false;
  const auto [e_c, e_l] = world.path->errors_at(world.ego_lambda, world.ego.position());
  (void)e_l;
  return std::abs(e_c) < 0.5;
}

bool left_turn_goal_reached(const TrafficWorld& world) {
  const auto corners = body_corners(world.ego, world.shape);
  for (const auto& c : corners) {
    if (c.y() < world.goal_y) return false;
  }
  return true;
}

}  // namespace

StepEvents step_world(TrafficWorld& world, const ControlInput& ego_control, double dt) {
  // Leader choices and accelerations from the pre-step state, then a
  // synchronous position update for every vehicle.
  std::vector<double> accels(world.others.size(), 0.0);
  for (std::size_t i = 0; i < world.others.size(); ++i) {
    OtherVehicle& me = world.others[i];
    const auto leader = select_leader(world, static_cast<int>(i));
    std::optional<IdmLeader> idm_leader;
    if (leader) {
      const double center_dist = (leader->state.position() - me.state.position()).norm();
      idm_leader = IdmLeader{std::max(0.1, center_dist - world.shape.length),
                             leader->state.v};
      me.leader_id = leader->id;
    } else {
      me.leader_id = -1;
    }
    accels[i] = idm_acceleration(me.state.v, me.idm, idm_leader);
    me.a_cmd = accels[i];
  }

  for (std::size_t i = 0; i < world.others.size(); ++i) {
    advance_longitudinal(world.others[i], accels[i], dt, world.limits.v_max);
  }
  world.ego = step(world.ego, ego_control, dt, world.limits);
  world.clock += dt;
  world.ego_lambda = world.path->project(world.ego.position(), world.ego_lambda);

  StepEvents events;
  for (std::size_t i = 0; i < world.others.size(); ++i) {
    if (check_collision(world.ego, world.others[i].state, world.shape)) {
      events.collisions.emplace_back(kEgoId, world.others[i].id);
      events.ego_collision = true;
    }
    for (std::size_t j = i + 1; j < world.others.size(); ++j) {
      if (check_collision(world.others[i].state, world.others[j].state, world.shape)) {
        events.collisions.emplace_back(world.others[i].id, world.others[j].id);
      }
    }
  }

  events.reached_goal = world.scenario == ScenarioKind::kRampMerge
                            ? merge_goal_reached(world)
                            : left_turn_goal_reached(world);
  return events;
}

double min_distance_to_others(const TrafficWorld& world) {
  double best = std::numeric_limits<double>::infinity();
  for (const OtherVehicle& other : world.others) {
    best = std::min(best, distance_to_body(world.ego.position(), other.state, world.shape));
  }
  return best;
}

}  // namespace intmpc
