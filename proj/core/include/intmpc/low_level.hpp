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

#include "intmpc/traffic_world.hpp"

namespace intmpc {

// Constraint-free tracking used by the learning-only baseline: proportional
// speed control plus pure-pursuit steering along the reference path.
struct LowLevelConfig {
  double speed_kp = 1.5;
  double lookahead_min = 3.0;   // m
  double lookahead_time = 1.0;  // s
};

ControlInput track_reference(const TrafficWorld& world, double v_ref,
                             const LowLevelConfig& cfg = {});

}  // namespace intmpc
