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

#include "intmpc/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace intmpc {

namespace {

constexpr double kSentinelAhead = 50.0;
constexpr double kLog2Pi = 1.8378770664093453;

RelativeState relative_to_ego(const VehicleState& ego, const VehicleState& other) {
  const double c = std::cos(ego.psi);
  const double s = std::sin(ego.psi);
  const double rx = other.x - ego.x;
  const double ry = other.y - ego.y;
  RelativeState rel;
  rel.dx = c * rx + s * ry;
  rel.dy = -s * rx + c * ry;
  rel.dpsi = wrap_angle(other.psi - ego.psi);
  rel.dv = other.v - ego.v;
  return rel;
}

double softplus(double x) {
  return x > 20.0 ? x : std::log1p(std::exp(x));
}

}  // namespace

ObsVector Observation::encode() const {
  ObsVector o;
  o << ego_speed / 4.0,
      leader.dx / 10.0, leader.dy / 4.0, leader.dpsi, leader.dv / 4.0,
      follower.dx / 10.0, follower.dy / 4.0, follower.dpsi, follower.dv / 4.0;
  return o;
}

Observation make_observation(const TrafficWorld& world) {
  Observation obs;
  obs.ego_speed = world.ego.v;

  const double ego_lon = world.lane_longitudinal(world.ego.position());
  const OtherVehicle* leader = nullptr;
  const OtherVehicle* follower = nullptr;
  double lead_gap = std::numeric_limits<double>::infinity();
  double follow_gap = std::numeric_limits<double>::infinity();
  for (const auto& other : world.others) {
    const double gap = world.lane_longitudinal(other.state.position()) - ego_lon;
    if (gap >= 0.0 && gap < lead_gap) {
      lead_gap = gap;
      leader = &other;
    } else if (gap < 0.0 && -gap < follow_gap) {
      follow_gap = -gap;
      follower = &other;
    }
  }

  if (leader != nullptr) {
    obs.leader = relative_to_ego(world.ego, leader->state);
    obs.has_leader = true;
  } else {
    obs.leader = RelativeState{kSentinelAhead, 0.0, 0.0, 0.0};
  }
  if (follower != nullptr) {
    obs.follower = relative_to_ego(world.ego, follower->state);
    obs.has_follower = true;
  } else {
    obs.follower = RelativeState{-kSentinelAhead, 0.0, 0.0, 0.0};
  }
  return obs;
}

double tanh_gaussian_log_prob(double raw, double mean, double log_std,
                              double v_ref_max) {
  const double std = std::exp(log_std);
  const double z = (raw - mean) / std;
  const double gauss = -0.5 * z * z - log_std - 0.5 * kLog2Pi;
  // log(1 - tanh(raw)^2) in a saturation-safe form.
  const double squash = 2.0 * (std::log(2.0) - raw - softplus(-2.0 * raw));
  return gauss - squash - std::log(v_ref_max / 2.0);
}

ActionSample sample_action(const Mlp& policy, const ObsVector& obs, Rng& rng,
                           bool deterministic, const PolicyConfig& cfg) {
  const Eigen::VectorXd out = forward(policy, obs);
  const double mean = out(0);
  const double log_std = std::clamp(out(1), cfg.log_std_min, cfg.log_std_max);

  ActionSample a;
  a.raw = deterministic ? mean : mean + std::exp(log_std) * rng.normal();
  a.v_ref = (std::tanh(a.raw) + 1.0) / 2.0 * cfg.v_ref_max;
  a.log_prob = tanh_gaussian_log_prob(a.raw, mean, log_std, cfg.v_ref_max);
  return a;
}

double compute_reward(const RewardInputs& in, const RewardConfig& cfg) {
  double r = in.ego_speed;
  if (in.planner_infeasible) r += cfg.r_infeasible;
  if (in.collision) r += cfg.r_collision;
  if (in.min_distance <= cfg.near_distance) r += cfg.r_near;
  return r;
}

}  // namespace intmpc
