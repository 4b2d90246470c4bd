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

#include <Eigen/Core>

#include "intmpc/types.hpp"

namespace intmpc {

struct StateDerivative {
  double dx = 0.0;
  double dy = 0.0;
  double dpsi = 0.0;
  double dv = 0.0;
};

// Kinematic bicycle model
//
//   x'   = v cos(psi + beta)
//   y'   = v sin(psi + beta)
//   psi' = v / l_r sin(beta)
//   v'   = a
//   beta = arctan( l_r / (l_f + l_r) tan(delta) )
//
// used by both the traffic simulator and the planner's shooting
// discretization so the two see identical vehicle motion.
StateDerivative derivative(const VehicleState& s, const ControlInput& u,
                           const VehicleLimits& limits);

// One RK4 step of `derivative` over dt. Speed is clamped to [0, v_max]
// (also at the internal stage evaluations, so a braking vehicle at rest
// stays at rest) and the heading is re-wrapped.
VehicleState step(const VehicleState& s, const ControlInput& u, double dt,
                  const VehicleLimits& limits);

// Jacobians of `step` with respect to state (4x4) and control (4x2),
// propagated analytically through the four RK4 stages. Valid away from the
// speed clamp; the planner keeps its iterates in the interior.
struct StepJacobians {
  Eigen::Matrix4d d_state;
  Eigen::Matrix<double, 4, 2> d_control;
};
StepJacobians step_jacobians(const VehicleState& s, const ControlInput& u,
                             double dt, const VehicleLimits& limits);

}  // namespace intmpc
