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
#include <cmath>

namespace intmpc {

using Vec2 = Eigen::Vector2d;

constexpr double kPi = 3.14159265358979323846;

// Wrap an angle to (-pi, pi].
inline double wrap_angle(double a) {
  a = std::fmod(a + kPi, 2.0 * kPi);
  if (a <= 0.0) a += 2.0 * kPi;
  return a - kPi;
}

// Pose plus forward speed of one vehicle in the world frame.
struct VehicleState {
  double x = 0.0;    // m
  double y = 0.0;    // m
  double psi = 0.0;  // heading, rad, wrapped to (-pi, pi]
  double v = 0.0;    // forward speed, m/s, >= 0

  Vec2 position() const { return Vec2(x, y); }
};

// Forward acceleration and steering angle.
struct ControlInput {
  double a = 0.0;      // m/s^2
  double delta = 0.0;  // rad
};

// Actuation and speed envelope plus axle geometry.
struct VehicleLimits {
  double a_lo = -5.0;      // m/s^2, braking bound (negative)
  double a_hi = 3.0;       // m/s^2, acceleration bound
  double delta_max = 0.5;  // rad
  double v_max = 8.0;      // m/s
  double l_r = 1.25;       // m, rear axle to center of gravity
  double l_f = 1.25;       // m, front axle to center of gravity

  double wheelbase() const { return l_r + l_f; }
};

// Body rectangle shared by every vehicle in the fleet.
struct VehicleShape {
  double length = 5.0;  // m
  double width = 2.0;   // m
};

}  // namespace intmpc
