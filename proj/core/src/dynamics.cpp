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

#include "intmpc/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace intmpc {

namespace {

double slip_angle(double delta, const VehicleLimits& limits) {
  const double ratio = limits.l_r / (limits.l_f + limits.l_r);
  return std::atan(ratio * std::tan(delta));
}

VehicleState advance(const VehicleState& s, const StateDerivative& d,
                     double h, const VehicleLimits& limits) {
  VehicleState out;
  out.x = s.x + h * d.dx;
  out.y = s.y + h * d.dy;
  out.psi = s.psi + h * d.dpsi;
  out.v = std::clamp(s.v + h * d.dv, 0.0, limits.v_max);
  return out;
}

}  // namespace

StateDerivative derivative(const VehicleState& s, const ControlInput& u,
                           const VehicleLimits& limits) {
  const double beta = slip_angle(u.delta, limits);
  StateDerivative d;
  d.dx = s.v * std::cos(s.psi + beta);
  d.dy = s.v * std::sin(s.psi + beta);
  d.dpsi = s.v / limits.l_r * std::sin(beta);
  d.dv = u.a;
  return d;
}

VehicleState step(const VehicleState& s, const ControlInput& u, double dt,
                  const VehicleLimits& limits) {
  const StateDerivative k1 = derivative(s, u, limits);
  const StateDerivative k2 = derivative(advance(s, k1, dt / 2, limits), u, limits);
  const StateDerivative k3 = derivative(advance(s, k2, dt / 2, limits), u, limits);
  const StateDerivative k4 = derivative(advance(s, k3, dt, limits), u, limits);

  VehicleState out;
  out.x = s.x + dt / 6.0 * (k1.dx + 2 * k2.dx + 2 * k3.dx + k4.dx);
  out.y = s.y + dt / 6.0 * (k1.dy + 2 * k2.dy + 2 * k3.dy + k4.dy);
  out.psi = wrap_angle(s.psi + dt / 6.0 * (k1.dpsi + 2 * k2.dpsi + 2 * k3.dpsi + k4.dpsi));
  out.v = std::clamp(s.v + dt / 6.0 * (k1.dv + 2 * k2.dv + 2 * k3.dv + k4.dv),
                     0.0, limits.v_max);
  return out;
}

namespace {

struct RawJacobians {
  Eigen::Matrix4d A;                 // d f / d state
  Eigen::Matrix<double, 4, 2> B;     // d f / d control
};

RawJacobians derivative_jacobians(const VehicleState& s, const ControlInput& u,
                                  const VehicleLimits& limits) {
  const double ratio = limits.l_r / (limits.l_f + limits.l_r);
  const double t = std::tan(u.delta);
  const double beta = std::atan(ratio * t);
  const double sec2 = 1.0 + t * t;
  const double dbeta_ddelta = ratio * sec2 / (1.0 + ratio * ratio * t * t);

  const double c = std::cos(s.psi + beta);
  const double sn = std::sin(s.psi + beta);

  RawJacobians j;
  j.A.setZero();
  j.A(0, 2) = -s.v * sn;
  j.A(0, 3) = c;
  j.A(1, 2) = s.v * c;
  j.A(1, 3) = sn;
  j.A(2, 3) = std::sin(beta) / limits.l_r;

  j.B.setZero();
  j.B(0, 1) = -s.v * sn * dbeta_ddelta;
  j.B(1, 1) = s.v * c * dbeta_ddelta;
  j.B(2, 1) = s.v / limits.l_r * std::cos(beta) * dbeta_ddelta;
  j.B(3, 0) = 1.0;
  return j;
}

}  // namespace

StepJacobians step_jacobians(const VehicleState& s, const ControlInput& u,
                             double dt, const VehicleLimits& limits) {
  const Eigen::Matrix4d I = Eigen::Matrix4d::Identity();

  const StateDerivative k1 = derivative(s, u, limits);
  const VehicleState s2 = advance(s, k1, dt / 2, limits);
  const StateDerivative k2 = derivative(s2, u, limits);
  const VehicleState s3 = advance(s, k2, dt / 2, limits);
  const StateDerivative k3 = derivative(s3, u, limits);
  const VehicleState s4 = advance(s, k3, dt, limits);

  const RawJacobians j1 = derivative_jacobians(s, u, limits);
  const RawJacobians j2 = derivative_jacobians(s2, u, limits);
  const RawJacobians j3 = derivative_jacobians(s3, u, limits);
  const RawJacobians j4 = derivative_jacobians(s4, u, limits);

  // dk_i/ds and dk_i/du chained through the stage states.
  const Eigen::Matrix4d A1 = j1.A;
  const Eigen::Matrix<double, 4, 2> B1 = j1.B;
  const Eigen::Matrix4d A2 = j2.A * (I + dt / 2 * A1);
  const Eigen::Matrix<double, 4, 2> B2 = j2.A * (dt / 2 * B1) + j2.B;
  const Eigen::Matrix4d A3 = j3.A * (I + dt / 2 * A2);
  const Eigen::Matrix<double, 4, 2> B3 = j3.A * (dt / 2 * B2) + j3.B;
  const Eigen::Matrix4d A4 = j4.A * (I + dt * A3);
  const Eigen::Matrix<double, 4, 2> B4 = j4.A * (dt * B3) + j4.B;

  StepJacobians out;
  out.d_state = I + dt / 6.0 * (A1 + 2 * A2 + 2 * A3 + A4);
  out.d_control = dt / 6.0 * (B1 + 2 * B2 + 2 * B3 + B4);
  return out;
}

}  // namespace intmpc
