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

#include "intmpc/scenario.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "config_json.hpp"
#include "intmpc/errors.hpp"
#include "intmpc/rng.hpp"

namespace intmpc {

namespace {

using nlohmann::json;

double smoothstep(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return t * t * (3.0 - 2.0 * t);
}

std::vector<Vec2> merge_waypoints(const ScenarioConfig& cfg) {
  const double ego_lane_y = -cfg.lane_width;
  std::vector<Vec2> wps;
  for (double x = cfg.merge_ego_start_x; x <= cfg.merge_path_end_x + 1e-9; x += 2.0) {
    const double t = (x - cfg.merge_blend_start_x) /
                     (cfg.merge_blend_end_x - cfg.merge_blend_start_x);
    wps.emplace_back(x, ego_lane_y * (1.0 - smoothstep(t)));
  }
  return wps;
}

std::vector<Vec2> left_turn_waypoints(const ScenarioConfig& cfg) {
  const double ego_lane_y = -cfg.lane_width / 2.0;
  const double exit_lane_x = cfg.turn_junction_x + cfg.lane_width / 2.0;
  const double r = cfg.turn_radius;
  const double x0 = exit_lane_x - r;  // arc entry
  const Vec2 center(x0, ego_lane_y + r);

  std::vector<Vec2> wps;
  for (double x = cfg.turn_ego_start_x; x < x0 - 1e-9; x += 2.0) {
    wps.emplace_back(x, ego_lane_y);
  }
  const int arc_steps = 12;
  for (int i = 0; i <= arc_steps; ++i) {
    const double th = kPi / 2.0 * i / arc_steps;
    wps.emplace_back(center.x() + r * std::sin(th), center.y() - r * std::cos(th));
  }
  for (double y = center.y() + 2.0; y <= cfg.turn_path_end_y + 1e-9; y += 2.0) {
    wps.emplace_back(exit_lane_x, y);
  }
  return wps;
}

std::pair<double, double> coop_range(const ScenarioConfig& cfg, CoopSetting s) {
  switch (s) {
    case CoopSetting::kCooperative:
      return {cfg.coop_cooperative_min, cfg.coop_cooperative_max};
    case CoopSetting::kNonCooperative:
      return {cfg.coop_noncooperative_min, cfg.coop_noncooperative_max};
    case CoopSetting::kMixed:
      return {cfg.coop_mixed_min, cfg.coop_mixed_max};
  }
  return {cfg.coop_mixed_min, cfg.coop_mixed_max};
}

}  // namespace

TrafficWorld spawn_scenario(const ScenarioConfig& cfg, CoopSetting setting,
                            std::uint64_t seed) {
  Rng rng(seed);

  TrafficWorld world;
  world.scenario = cfg.kind;
  world.lane_width = cfg.lane_width;
  world.timeout = cfg.timeout;
  world.prediction_horizon = cfg.prediction_horizon;
  world.shape = cfg.shape;
  world.limits = cfg.limits;

  if (cfg.kind == ScenarioKind::kRampMerge) {
    world.main_lane_y = 0.0;
    world.main_lane_heading = 0.0;
    world.path = std::make_shared<ReferencePath>(merge_waypoints(cfg));
    world.ego = VehicleState{cfg.merge_ego_start_x, -cfg.lane_width, 0.0,
                             rng.uniform(cfg.speed_min, cfg.speed_max)};
    world.goal_lambda = world.path->project_global(
        Vec2(cfg.merge_blend_end_x + cfg.merge_goal_offset, 0.0));
  } else {
    world.main_lane_y = cfg.lane_width / 2.0;
    world.main_lane_heading = kPi;
    world.path = std::make_shared<ReferencePath>(left_turn_waypoints(cfg));
    world.ego = VehicleState{cfg.turn_ego_start_x, -cfg.lane_width / 2.0, 0.0,
                             rng.uniform(cfg.speed_min, cfg.speed_max)};
    world.goal_y = world.main_lane_y + cfg.lane_width / 2.0;
  }
  world.ego_lambda = world.path->project_global(world.ego.position());
  world.ego_prediction_y = world.ego.y;

  const auto [coop_lo, coop_hi] = coop_range(cfg, setting);
  const double front = cfg.kind == ScenarioKind::kRampMerge ? cfg.merge_front_x
                                                            : cfg.turn_front_x;
  const double back_dir = cfg.kind == ScenarioKind::kRampMerge ? -1.0 : 1.0;

  double x = front;
  for (int i = 0; i < cfg.n_vehicles; ++i) {
    if (i > 0) x += back_dir * rng.uniform(cfg.spacing_min, cfg.spacing_max);
    OtherVehicle veh;
    veh.id = i + 1;
    veh.lane_center_y = world.main_lane_y;
    veh.lane_heading = world.main_lane_heading;
    veh.state = VehicleState{x, world.main_lane_y, world.main_lane_heading,
                             rng.uniform(cfg.speed_min, cfg.speed_max)};
    veh.coop = rng.uniform(coop_lo, coop_hi);
    veh.idm = cfg.idm;
    veh.idm.v_star = rng.uniform(cfg.speed_min, cfg.speed_max);
    veh.idm.a_max *= rng.uniform(1.0 - cfg.idm_jitter, 1.0 + cfg.idm_jitter);
    veh.idm.t_headway *= rng.uniform(1.0 - cfg.idm_jitter, 1.0 + cfg.idm_jitter);
    world.others.push_back(veh);
  }
  return world;
}

const char* to_string(ScenarioKind k) {
  return k == ScenarioKind::kRampMerge ? "merge" : "left_turn";
}

const char* to_string(CoopSetting s) {
  switch (s) {
    case CoopSetting::kCooperative: return "cooperative";
    case CoopSetting::kMixed: return "mixed";
    case CoopSetting::kNonCooperative: return "noncooperative";
  }
  return "mixed";
}

const char* to_string(PredictionModel m) {
  switch (m) {
    case PredictionModel::kIdm: return "idm";
    case PredictionModel::kConstantVelocity: return "cv";
    case PredictionModel::kConstantVelocityPath: return "cv_path";
    case PredictionModel::kMpccSelf: return "mpcc";
  }
  return "cv";
}

ScenarioKind scenario_kind_from_string(const std::string& s) {
  if (s == "merge") return ScenarioKind::kRampMerge;
  if (s == "left_turn") return ScenarioKind::kUnprotectedLeftTurn;
  throw ConfigError("unknown scenario kind: " + s);
}

CoopSetting coop_setting_from_string(const std::string& s) {
  if (s == "cooperative") return CoopSetting::kCooperative;
  if (s == "mixed") return CoopSetting::kMixed;
  if (s == "noncooperative") return CoopSetting::kNonCooperative;
  throw ConfigError("unknown cooperation setting: " + s);
}

PredictionModel prediction_model_from_string(const std::string& s) {
  if (s == "idm") return PredictionModel::kIdm;
  if (s == "cv") return PredictionModel::kConstantVelocity;
  if (s == "cv_path") return PredictionModel::kConstantVelocityPath;
  if (s == "mpcc") return PredictionModel::kMpccSelf;
  throw ConfigError("unknown prediction model: " + s);
}

namespace detail {

void scenario_from_json(const nlohmann::json& j, ScenarioConfig& c) {
  if (j.contains("scenario")) c.kind = scenario_kind_from_string(j.at("scenario"));
  c.n_vehicles = j.value("n_vehicles", c.n_vehicles);
  c.spacing_min = j.value("spacing_min", c.spacing_min);
  c.spacing_max = j.value("spacing_max", c.spacing_max);
  c.speed_min = j.value("speed_min", c.speed_min);
  c.speed_max = j.value("speed_max", c.speed_max);
  c.coop_cooperative_min = j.value("coop_cooperative_min", c.coop_cooperative_min);
  c.coop_cooperative_max = j.value("coop_cooperative_max", c.coop_cooperative_max);
  c.coop_noncooperative_min = j.value("coop_noncooperative_min", c.coop_noncooperative_min);
  c.coop_noncooperative_max = j.value("coop_noncooperative_max", c.coop_noncooperative_max);
  c.coop_mixed_min = j.value("coop_mixed_min", c.coop_mixed_min);
  c.coop_mixed_max = j.value("coop_mixed_max", c.coop_mixed_max);
  c.idm.a_max = j.value("idm_a_max", c.idm.a_max);
  c.idm.s0 = j.value("idm_s0", c.idm.s0);
  c.idm.t_headway = j.value("idm_t_headway", c.idm.t_headway);
  c.idm.b_comf = j.value("idm_b_comf", c.idm.b_comf);
  c.idm_jitter = j.value("idm_jitter", c.idm_jitter);
  c.lane_width = j.value("lane_width", c.lane_width);
  c.timeout = j.value("timeout", c.timeout);
  c.prediction_horizon = j.value("prediction_horizon", c.prediction_horizon);
  c.shape.length = j.value("vehicle_length", c.shape.length);
  c.shape.width = j.value("vehicle_width", c.shape.width);
  c.limits.a_lo = j.value("a_lo", c.limits.a_lo);
  c.limits.a_hi = j.value("a_hi", c.limits.a_hi);
  c.limits.delta_max = j.value("delta_max", c.limits.delta_max);
  c.limits.v_max = j.value("v_max", c.limits.v_max);
  c.limits.l_r = j.value("l_r", c.limits.l_r);
  c.limits.l_f = j.value("l_f", c.limits.l_f);
  c.merge_ego_start_x = j.value("merge_ego_start_x", c.merge_ego_start_x);
  c.merge_blend_start_x = j.value("merge_blend_start_x", c.merge_blend_start_x);
  c.merge_blend_end_x = j.value("merge_blend_end_x", c.merge_blend_end_x);
  c.merge_path_end_x = j.value("merge_path_end_x", c.merge_path_end_x);
  c.merge_goal_offset = j.value("merge_goal_offset", c.merge_goal_offset);
  c.merge_front_x = j.value("merge_front_x", c.merge_front_x);
  c.turn_ego_start_x = j.value("turn_ego_start_x", c.turn_ego_start_x);
  c.turn_junction_x = j.value("turn_junction_x", c.turn_junction_x);
  c.turn_radius = j.value("turn_radius", c.turn_radius);
  c.turn_path_end_y = j.value("turn_path_end_y", c.turn_path_end_y);
  c.turn_front_x = j.value("turn_front_x", c.turn_front_x);
}

nlohmann::json scenario_to_json(const ScenarioConfig& c) {
  json j;
  j["scenario"] = to_string(c.kind);
  j["n_vehicles"] = c.n_vehicles;
  j["spacing_min"] = c.spacing_min;
  j["spacing_max"] = c.spacing_max;
  j["speed_min"] = c.speed_min;
  j["speed_max"] = c.speed_max;
  j["coop_cooperative_min"] = c.coop_cooperative_min;
  j["coop_cooperative_max"] = c.coop_cooperative_max;
  j["coop_noncooperative_min"] = c.coop_noncooperative_min;
  j["coop_noncooperative_max"] = c.coop_noncooperative_max;
  j["coop_mixed_min"] = c.coop_mixed_min;
  j["coop_mixed_max"] = c.coop_mixed_max;
  j["idm_a_max"] = c.idm.a_max;
  j["idm_s0"] = c.idm.s0;
  j["idm_t_headway"] = c.idm.t_headway;
  j["idm_b_comf"] = c.idm.b_comf;
  j["idm_jitter"] = c.idm_jitter;
  j["lane_width"] = c.lane_width;
  j["timeout"] = c.timeout;
  j["prediction_horizon"] = c.prediction_horizon;
  j["vehicle_length"] = c.shape.length;
  j["vehicle_width"] = c.shape.width;
  j["a_lo"] = c.limits.a_lo;
  j["a_hi"] = c.limits.a_hi;
  j["delta_max"] = c.limits.delta_max;
  j["v_max"] = c.limits.v_max;
  j["l_r"] = c.limits.l_r;
  j["l_f"] = c.limits.l_f;
  j["merge_ego_start_x"] = c.merge_ego_start_x;
  j["merge_blend_start_x"] = c.merge_blend_start_x;
  j["merge_blend_end_x"] = c.merge_blend_end_x;
  j["merge_path_end_x"] = c.merge_path_end_x;
  j["merge_goal_offset"] = c.merge_goal_offset;
  j["merge_front_x"] = c.merge_front_x;
  j["turn_ego_start_x"] = c.turn_ego_start_x;
  j["turn_junction_x"] = c.turn_junction_x;
  j["turn_radius"] = c.turn_radius;
  j["turn_path_end_y"] = c.turn_path_end_y;
  j["turn_front_x"] = c.turn_front_x;
  return j;
}

}  // namespace detail

ScenarioConfig load_scenario_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario config: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("bad scenario config " + path + ": " + e.what());
  }
  ScenarioConfig cfg;
  detail::scenario_from_json(j, cfg);
  return cfg;
}

void save_scenario_config(const ScenarioConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write scenario config: " + path);
  out << detail::scenario_to_json(cfg).dump(2) << "\n";
}

}  // namespace intmpc
