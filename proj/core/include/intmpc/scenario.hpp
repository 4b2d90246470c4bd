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

#include <cstdint>
#include <string>

#include "intmpc/traffic_world.hpp"

namespace intmpc {

// Episode generation parameters. Serialized as JSON (see docs/formats.md);
// every field has a working default so an empty file is a valid config.
struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::kRampMerge;

  int n_vehicles = 25;
  double spacing_min = 7.0;   // successive center-to-center distance, m
  double spacing_max = 10.0;
  double speed_min = 3.0;     // initial and desired speeds, m/s
  double speed_max = 4.0;

  // Cooperation coefficient ranges per setting, m.
  double coop_cooperative_min = 2.0, coop_cooperative_max = 4.0;
  double coop_noncooperative_min = 0.0, coop_noncooperative_max = 2.0;
  double coop_mixed_min = 0.0, coop_mixed_max = 4.0;

  IdmParams idm;             // base driver parameters
  double idm_jitter = 0.1;   // relative jitter on a_max and t_headway

  double lane_width = 3.5;
  double timeout = 60.0;
  double prediction_horizon = 1.5;
  VehicleShape shape;
  VehicleLimits limits;

  // Ramp merge geometry (main lane center at y = 0, traffic toward +x).
  double merge_ego_start_x = -30.0;
  double merge_blend_start_x = 5.0;
  double merge_blend_end_x = 35.0;
  double merge_path_end_x = 80.0;
  double merge_goal_offset = 5.0;   // goal gate this far past the blend end
  double merge_front_x = 35.0;      // lead vehicle position at t = 0

  // Unprotected left turn geometry (oncoming lane center at y = +1.75,
  // traffic toward -x; ego approaches on y = -1.75 and turns onto the
  // vertical road at junction_x).
  double turn_ego_start_x = -35.0;
  double turn_junction_x = 10.0;
  double turn_radius = 8.0;
  double turn_path_end_y = 40.0;
  double turn_front_x = 0.0;        // lead vehicle position at t = 0
};

ScenarioConfig load_scenario_config(const std::string& path);
void save_scenario_config(const ScenarioConfig& cfg, const std::string& path);

const char* to_string(ScenarioKind k);
const char* to_string(CoopSetting s);
const char* to_string(PredictionModel m);
ScenarioKind scenario_kind_from_string(const std::string& s);
CoopSetting coop_setting_from_string(const std::string& s);
PredictionModel prediction_model_from_string(const std::string& s);

// Deterministic episode setup: the same (config, setting, seed) triple
// always produces the same world.
TrafficWorld spawn_scenario(const ScenarioConfig& cfg, CoopSetting setting,
                            std::uint64_t seed);

}  // namespace intmpc
