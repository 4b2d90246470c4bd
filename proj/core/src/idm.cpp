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

#include "intmpc/idm.hpp"

#include <algorithm>
#include <cmath>

namespace intmpc {

double idm_acceleration(double v, const IdmParams& p,
                        const std::optional<IdmLeader>& leader) {
  const double free_term = std::pow(v / p.v_star, 4.0);
  double interaction = 0.0;
  if (leader) {
    const double dv = v - leader->leader_v;  // approach rate
    const double s_star = std::max(
        p.s0, p.s0 + v * p.t_headway + v * dv / (2.0 * std::sqrt(p.a_max * p.b_comf)));
    const double ratio = s_star / leader->gap;
    interaction = ratio * ratio;
  }
  const double a = p.a_max * (1.0 - free_term - interaction);
  return std::clamp(a, -kIdmHardBrake, p.a_max);
}

}  // namespace intmpc
