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

#include "intmpc/mlp.hpp"
#include "intmpc/replay_buffer.hpp"
#include "intmpc/traffic_world.hpp"

namespace intmpc {

struct RelativeState {
  double dx = 0.0;   // ego frame, m
  double dy = 0.0;   // ego frame, m
  double dpsi = 0.0; // rad
  double dv = 0.0;   // m/s
};

// Ego speed plus leader/follower states relative to the ego frame. Missing
// vehicles are encoded as a sentinel 50 m ahead/behind at matched speed.
struct Observation {
  double ego_speed = 0.0;
  RelativeState leader;
  RelativeState follower;
  bool has_leader = false;
  bool has_follower = false;

  ObsVector encode() const;  // scaled network input
};

// Leader = nearest main-lane vehicle ahead of the ego's projected main-lane
// position, follower = nearest behind.
Observation make_observation(const TrafficWorld& world);

struct PolicyConfig {
  double v_ref_max = 5.0;
  double log_std_min = -20.0;
  double log_std_max = 2.0;
};

struct ActionSample {
  double v_ref = 0.0;     // squashed action in [0, v_ref_max]
  double raw = 0.0;       // pre-squash draw
  double log_prob = 0.0;  // density of v_ref, squash correction included
};

// Draw from the squashed Gaussian head (z = mean when deterministic):
// v_ref = (tanh(z) + 1)/2 * v_ref_max. The policy net outputs the Gaussian
// mean and a log-std clamped to [log_std_min, log_std_max].
ActionSample sample_action(const Mlp& policy, const ObsVector& obs, Rng& rng,
                           bool deterministic, const PolicyConfig& cfg);

// Density of the mapped action for an arbitrary raw value.
double tanh_gaussian_log_prob(double raw, double mean, double log_std,
                              double v_ref_max);

struct RewardConfig {
  double r_infeasible = -1.0;
  double r_collision = -300.0;
  double r_near = -1.5;
  double near_distance = 2.5;  // m, center to nearest body
};

struct RewardInputs {
  double ego_speed = 0.0;
  bool planner_infeasible = false;
  bool collision = false;
  double min_distance = 1e9;
};

// Per-cycle reward: speed term always, penalties added when their guard
// holds.
double compute_reward(const RewardInputs& in, const RewardConfig& cfg);

}  // namespace intmpc
