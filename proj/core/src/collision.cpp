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

#include "intmpc/collision.hpp"

#include <algorithm>
#include <cmath>

namespace intmpc {

std::array<Vec2, 4> body_corners(const VehicleState& s, const VehicleShape& shape) {
  const double c = std::cos(s.psi);
  const double sn = std::sin(s.psi);
  const Vec2 fwd(c, sn);
  const Vec2 left(-sn, c);
  const Vec2 center(s.x, s.y);
  const double hl = shape.length / 2.0;
  const double hw = shape.width / 2.0;
  return {center + hl * fwd + hw * left, center + hl * fwd - hw * left,
          center - hl * fwd - hw * left, center - hl * fwd + hw * left};
}

namespace {

bool separated_on_axis(const Vec2& axis, const std::array<Vec2, 4>& a,
                       const std::array<Vec2, 4>& b) {
  double amin = axis.dot(a[0]), amax = amin;
  double bmin = axis.dot(b[0]), bmax = bmin;
  for (int i = 1; i < 4; ++i) {
    const double pa = axis.dot(a[i]);
    amin = std::min(amin, pa);
    amax = std::max(amax, pa);
    const double pb = axis.dot(b[i]);
    bmin = std::min(bmin, pb);
    bmax = std::max(bmax, pb);
  }
  return amax < bmin || bmax < amin;
}

}  // namespace

bool check_collision(const VehicleState& a, const VehicleState& b,
                     const VehicleShape& shape) {
  const auto ca = body_corners(a, shape);
  const auto cb = body_corners(b, shape);
  const std::array<Vec2, 4> axes = {
      Vec2(std::cos(a.psi), std::sin(a.psi)),
      Vec2(-std::sin(a.psi), std::cos(a.psi)),
      Vec2(std::cos(b.psi), std::sin(b.psi)),
      Vec2(-std::sin(b.psi), std::cos(b.psi))};
  for (const auto& axis : axes) {
    if (separated_on_axis(axis, ca, cb)) return false;
  }
  return true;
}

double distance_to_body(const Vec2& point, const VehicleState& s,
                        const VehicleShape& shape) {
  const double c = std::cos(s.psi);
  const double sn = std::sin(s.psi);
  const Vec2 r = point - Vec2(s.x, s.y);
  // Into the body frame, then clamp to the half extents.
  const double lx = c * r.x() + sn * r.y();
  const double ly = -sn * r.x() + c * r.y();
  const double qx = std::clamp(lx, -shape.length / 2.0, shape.length / 2.0);
  const double qy = std::clamp(ly, -shape.width / 2.0, shape.width / 2.0);
  return std::hypot(lx - qx, ly - qy);
}

}  // namespace intmpc
