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

#include <optional>

namespace intmpc {

// Car-following parameters of one driver.
struct IdmParams {
  double a_max = 3.0;    // maximum acceleration, m/s^2
  double v_star = 3.5;   // desired speed, m/s
  double s0 = 2.0;       // jam distance, m
  double t_headway = 1.0;  // desired time headway, s
  double b_comf = 2.0;   // comfortable deceleration, m/s^2
};

// Hard braking bound applied to the model output.
inline constexpr double kIdmHardBrake = 8.0;  // m/s^2

struct IdmLeader {
  double gap = 0.0;       // bumper-to-bumper distance, m, > 0
  double leader_v = 0.0;  // leader forward speed, m/s
};

// Longitudinal acceleration
//
//   a = a_max [ 1 - (v/v*)^4 - (s*(v, dv) / gap)^2 ]
//   s*(v, dv) = max(s0, s0 + v T + v dv / (2 sqrt(a_max b_comf)))
//
// The gap term is dropped when no leader is present (free road). Output is
// clamped to [-kIdmHardBrake, a_max].
double idm_acceleration(double v, const IdmParams& p,
                        const std::optional<IdmLeader>& leader);

}  // namespace intmpc
