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

#include "intmpc/low_level.hpp"

#include <algorithm>
#include <cmath>

namespace intmpc {

ControlInput track_reference(const TrafficWorld& world, double v_ref,
                             const LowLevelConfig& cfg) {
  const VehicleState& ego = world.ego;
  const double lookahead = std::max(cfg.lookahead_min, cfg.lookahead_time * ego.v);
  const double lam = progress_update(world.ego_lambda, 1.0, lookahead,
                                     world.path->total_length());
  const Vec2 target = world.path->point_at(lam);
  const double heading_to_target =
      std::atan2(target.y() - ego.y, target.x() - ego.x);
  const double alpha = wrap_angle(heading_to_target - ego.psi);

  ControlInput u;
  u.delta = std::atan2(2.0 * world.limits.wheelbase() * std::sin(alpha), lookahead);
  u.delta = std::clamp(u.delta, -world.limits.delta_max, world.limits.delta_max);
  u.a = std::clamp(cfg.speed_kp * (v_ref - ego.v), world.limits.a_lo,
                   world.limits.a_hi);
  return u;
}

}  // namespace intmpc
