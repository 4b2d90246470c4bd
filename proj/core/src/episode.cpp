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

#include "intmpc/episode.hpp"

namespace intmpc {

void EpisodeEngine::begin(TrafficWorld world) {
  world_ = std::move(world);
  planner_.reset();
  done_ = false;
  outcome_ = EpisodeOutcome{};
  steps_ = 0;
  infeasible_steps_ = 0;
}

EpisodeEngine::StepInfo EpisodeEngine::advance(const ControlInput& u, bool infeasible) {
  world_.ego_prediction_y = predict_ego(world_, cfg_.prediction, &planner_);
  const StepEvents events = step_world(world_, u, cfg_.dt);
  steps_ += 1;
  if (infeasible) infeasible_steps_ += 1;

  StepInfo info;
  info.applied = u;
  info.infeasible = infeasible;
  info.collision = events.ego_collision;
  info.goal = events.reached_goal;
  info.min_distance = min_distance_to_others(world_);

  RewardInputs rin;
  rin.ego_speed = world_.ego.v;
  rin.planner_infeasible = infeasible;
  rin.collision = events.ego_collision;
  rin.min_distance = info.min_distance;
  info.reward = compute_reward(rin, cfg_.reward);

  if (!done_) {
    if (events.ego_collision) {
      done_ = true;
      outcome_.kind = EpisodeOutcome::Kind::kCollision;
    } else if (events.reached_goal) {
      done_ = true;
      outcome_.kind = EpisodeOutcome::Kind::kSuccess;
      outcome_.time_to_goal = world_.clock;
    } else if (world_.clock >= world_.timeout - 1e-9) {
      done_ = true;
      outcome_.kind = EpisodeOutcome::Kind::kTimeout;
    }
  }
  return info;
}

EpisodeEngine::StepInfo EpisodeEngine::step_mpcc(double v_ref) {
  const PlanResult plan = planner_.plan(world_, v_ref, cfg_.collision_constraints);
  return advance(plan.control, plan.fallback);
}

EpisodeEngine::StepInfo EpisodeEngine::step_speed_track(double v_ref) {
  return advance(track_reference(world_, v_ref, cfg_.low_level), false);
}

}  // namespace intmpc
