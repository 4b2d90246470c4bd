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

#include "intmpc/mpcc_problem.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "intmpc/errors.hpp"

namespace intmpc {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kFeasible: return "feasible";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kMaxIterations: return "max_iterations";
  }
  return "infeasible";
}

double stage_cost(const VehicleState& s, const ControlInput& u, double lambda,
                  double v_ref, const MpccWeights& w, const ReferencePath& path) {
  const auto [e_c, e_l] = path.errors_at(lambda, s.position());
  const double dv = v_ref - s.v;
  return w.q_c * e_c * e_c + w.q_l * e_l * e_l + w.q_v * dv * dv +
         w.q_u * u.a * u.a + w.q_delta * u.delta * u.delta;
}

double terminal_cost(const VehicleState& s, double lambda, double v_ref,
                     const MpccWeights& w, const ReferencePath& path) {
  return stage_cost(s, ControlInput{0.0, 0.0}, lambda, v_ref, w, path);
}

Vec2 disc_center(const VehicleState& s, double offset) {
  return Vec2(s.x + offset * std::cos(s.psi), s.y + offset * std::sin(s.psi));
}

double collision_margin(const Vec2& disc, const ObstacleEllipse& obstacle, int stage) {
  const Vec2 d = disc - obstacle.centers[static_cast<std::size_t>(stage)];
  const double c = std::cos(obstacle.phi);
  const double sn = std::sin(obstacle.phi);
  // Relative position in the obstacle frame.
  const double lx = c * d.x() + sn * d.y();
  const double ly = -sn * d.x() + c * d.y();
  const double ax = lx / obstacle.alpha;
  const double by = ly / obstacle.beta;
  return ax * ax + by * by;
}

namespace {

using nlohmann::json;

json vec2_json(const Vec2& v) { return json::array({v.x(), v.y()}); }
Vec2 vec2_from(const json& j) { return Vec2(j.at(0).get<double>(), j.at(1).get<double>()); }

}  // namespace

void save_problem(const MpccProblem& p, const std::string& path) {
  json j;
  j["initial_state"] = {p.initial_state.x, p.initial_state.y, p.initial_state.psi,
                        p.initial_state.v};
  j["initial_lambda"] = p.initial_lambda;
  j["v_ref"] = p.v_ref;
  j["weights"] = {{"q_c", p.weights.q_c},
                  {"q_l", p.weights.q_l},
                  {"q_v", p.weights.q_v},
                  {"q_u", p.weights.q_u},
                  {"q_delta", p.weights.q_delta}};
  json wps = json::array();
  for (const auto& w : p.path->waypoints()) wps.push_back(vec2_json(w));
  j["waypoints"] = wps;
  j["w_left"] = p.w_left;
  j["w_right"] = p.w_right;
  json obs = json::array();
  for (const auto& o : p.obstacles) {
    json jo;
    jo["phi"] = o.phi;
    jo["alpha"] = o.alpha;
    jo["beta"] = o.beta;
    json cs = json::array();
    for (const auto& c : o.centers) cs.push_back(vec2_json(c));
    jo["centers"] = cs;
    obs.push_back(jo);
  }
  j["obstacles"] = obs;
  j["limits"] = {{"a_lo", p.limits.a_lo},     {"a_hi", p.limits.a_hi},
                 {"delta_max", p.limits.delta_max}, {"v_max", p.limits.v_max},
                 {"l_r", p.limits.l_r},       {"l_f", p.limits.l_f}};
  j["horizon"] = p.horizon;
  j["dt"] = p.dt;
  j["disc_radius"] = p.discs.radius;
  j["disc_offsets"] = p.discs.offsets;

  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write problem file: " + path);
  out << j.dump(2) << "\n";
}

MpccProblem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open problem file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("bad problem file " + path + ": " + e.what());
  }

  MpccProblem p;
  const auto& s = j.at("initial_state");
  p.initial_state = {s.at(0), s.at(1), s.at(2), s.at(3)};
  p.initial_lambda = j.at("initial_lambda");
  p.v_ref = j.at("v_ref");
  const auto& w = j.at("weights");
  p.weights = {w.at("q_c"), w.at("q_l"), w.at("q_v"), w.at("q_u"), w.at("q_delta")};
  std::vector<Vec2> wps;
  for (const auto& jw : j.at("waypoints")) wps.push_back(vec2_from(jw));
  p.path = std::make_shared<ReferencePath>(wps);
  p.w_left = j.at("w_left");
  p.w_right = j.at("w_right");
  for (const auto& jo : j.at("obstacles")) {
    ObstacleEllipse o;
    o.phi = jo.at("phi");
    o.alpha = jo.at("alpha");
    o.beta = jo.at("beta");
    for (const auto& jc : jo.at("centers")) o.centers.push_back(vec2_from(jc));
    p.obstacles.push_back(std::move(o));
  }
  const auto& l = j.at("limits");
  p.limits = {l.at("a_lo"), l.at("a_hi"), l.at("delta_max"),
              l.at("v_max"), l.at("l_r"),  l.at("l_f")};
  p.horizon = j.at("horizon");
  p.dt = j.at("dt");
  p.discs.radius = j.at("disc_radius");
  p.discs.offsets = j.at("disc_offsets").get<std::vector<double>>();
  return p;
}

void save_solver_log(const std::vector<SqpIterationRecord>& log, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write solver log: " + path);
  out << "iteration,cost,merit,kkt,violation,step_norm,penalty\n";
  char line[256];
  for (const auto& r : log) {
    std::snprintf(line, sizeof(line), "%d,%.9e,%.9e,%.9e,%.9e,%.9e,%.3e\n",
                  r.iteration, r.cost, r.merit, r.kkt, r.violation, r.step_norm,
                  r.penalty);
    out << line;
  }
}

}  // namespace intmpc
