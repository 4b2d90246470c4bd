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

#include "intmpc/low_level.hpp"
#include "intmpc/planner.hpp"
#include "intmpc/policy.hpp"
#include "intmpc/traffic_world.hpp"

namespace intmpc {

struct EngineConfig {
  PlannerConfig planner;
  PredictionModel prediction = PredictionModel::kConstantVelocity;
  RewardConfig reward;
  LowLevelConfig low_level;
  bool collision_constraints = true;
  double dt = 0.1;
};

// Drives one episode cycle by cycle: plan (or track), estimate the ego
// prediction for the other drivers, advance the world, and account
// rewards/outcome. Owns the planner so warm starts stay episode-local.
class EpisodeEngine {
 public:
  explicit EpisodeEngine(const EngineConfig& cfg)
      : cfg_(cfg), planner_(cfg.planner) {}

  void begin(TrafficWorld world);

  struct StepInfo {
    double reward = 0.0;
    bool infeasible = false;
    bool collision = false;
    bool goal = false;
    double min_distance = 0.0;
    ControlInput applied;
  };

  // One control cycle through the receding-horizon planner.
  StepInfo step_mpcc(double v_ref);
  // One control cycle through the constraint-free tracking controller.
  StepInfo step_speed_track(double v_ref);

  bool done() const { return done_; }
  const EpisodeOutcome& outcome() const { return outcome_; }
  const TrafficWorld& world() const { return world_; }
  MpccPlanner& planner() { return planner_; }
  int steps() const { return steps_; }
  int infeasible_steps() const { return infeasible_steps_; }
  const EngineConfig& config() const { return cfg_; }

 private:
  StepInfo advance(const ControlInput& u, bool infeasible);

  EngineConfig cfg_;
  MpccPlanner planner_;
  TrafficWorld world_;
  bool done_ = false;
  EpisodeOutcome outcome_;
  int steps_ = 0;
  int infeasible_steps_ = 0;
};

}  // namespace intmpc
