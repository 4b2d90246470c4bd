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

#include <array>

#include "intmpc/types.hpp"

namespace intmpc {

// Corners of the body rectangle centered on the vehicle pose.
std::array<Vec2, 4> body_corners(const VehicleState& s, const VehicleShape& shape);

// Oriented-rectangle intersection via the separating axis theorem.
// Touching rectangles count as colliding.
bool check_collision(const VehicleState& a, const VehicleState& b,
                     const VehicleShape& shape);

// Euclidean distance from a point to the body rectangle (0 inside).
double distance_to_body(const Vec2& point, const VehicleState& s,
                        const VehicleShape& shape);

}  // namespace intmpc
