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

#include "intmpc/planner.hpp"

#include <algorithm>
#include <cmath>

namespace intmpc {

MpccProblem MpccPlanner::build_problem(const TrafficWorld& world, double v_ref,
                                       bool collision_constraints) const {
  MpccProblem p;
  p.initial_state = world.ego;
  p.initial_lambda = world.ego_lambda;
  p.v_ref = v_ref;
  p.weights = cfg_.weights;
  p.path = world.path;
  p.w_left = cfg_.w_left;
  p.w_right = cfg_.w_right;
  p.limits = world.limits;
  p.horizon = cfg_.horizon;
  p.dt = cfg_.dt;
  p.discs = cfg_.discs;

  if (collision_constraints) {
    // Nearest vehicles within range become swept-ellipse obstacles.
    std::vector<std::pair<double, const OtherVehicle*>> ranked;
    for (const auto& other : world.others) {
      const double d = (other.state.position() - world.ego.position()).norm();
      if (d <= cfg_.obstacle_radius) ranked.emplace_back(d, &other);
    }
    std::sort(ranked.begin(), ranked.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    const int n = std::min<int>(cfg_.max_obstacles, static_cast<int>(ranked.size()));
    for (int i = 0; i < n; ++i) {
      const OtherVehicle& veh = *ranked[static_cast<std::size_t>(i)].second;
      ObstacleEllipse obs;
      obs.phi = veh.state.psi;
      obs.alpha = world.shape.length / 2.0 + cfg_.discs.radius;
      obs.beta = world.shape.width / 2.0 + cfg_.discs.radius;
      obs.centers.reserve(static_cast<std::size_t>(p.horizon) + 1);
      const Vec2 vel = veh.state.v * Vec2(std::cos(veh.state.psi), std::sin(veh.state.psi));
      for (int k = 0; k <= p.horizon; ++k) {
        obs.centers.push_back(veh.state.position() + k * p.dt * vel);
      }
      p.obstacles.push_back(std::move(obs));
    }
  }
  return p;
}

PlanResult MpccPlanner::plan(const TrafficWorld& world, double v_ref,
                             bool collision_constraints) {
  const MpccProblem problem = build_problem(world, v_ref, collision_constraints);

  std::vector<ControlInput> init;
  if (previous_ && previous_->controls.size() ==
                       static_cast<std::size_t>(problem.horizon)) {
    init.assign(previous_->controls.begin() + 1, previous_->controls.end());
    init.push_back(previous_->controls.back());
  }

  PlanResult out;
  out.solution = solver_.solve(problem, init.empty() ? nullptr : &init);
  if (out.solution.usable()) {
    out.control = out.solution.controls.front();
    previous_ = out.solution;
  } else {
    out.control = ControlInput{world.limits.a_lo, 0.0};
    out.fallback = true;
    previous_.reset();
  }
  return out;
}

std::optional<double> MpccPlanner::predict_terminal_y(const TrafficWorld& world) {
  const MpccProblem problem = build_problem(world, world.ego.v, false);
  MpccSolution sol = solver_.solve(problem, nullptr);
  if (!sol.usable()) return std::nullopt;
  return sol.states.back().y;
}

}  // namespace intmpc
