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
#include <string>
#include <vector>

#include "intmpc/episode.hpp"
#include "intmpc/mlp.hpp"
#include "intmpc/scenario.hpp"

namespace intmpc {

// What is driving the ego during evaluation.
enum class Method {
  kIntMpc,        // learned velocity reference + constrained planner
  kMpccBaseline,  // fixed velocity reference + constrained planner
  kDrlBaseline,   // learned velocity reference + plain tracking, no constraints
};

const char* to_string(Method m);
Method method_from_string(const std::string& s);

struct EvalConfig {
  ScenarioConfig scenario;
  CoopSetting coop = CoopSetting::kMixed;
  PredictionModel prediction = PredictionModel::kConstantVelocity;
  PlannerConfig planner;
  RewardConfig reward;
  PolicyConfig policy;
  double dt = 0.1;
  double baseline_v_ref = 2.0;  // fixed reference of the planner baseline
  int workers = 2;
  std::string trace_dir;  // when set, one trace file per episode
};

struct EpisodeSummary {
  int index = 0;
  std::uint64_t seed = 0;
  EpisodeOutcome outcome;
  int steps = 0;
  int infeasible_steps = 0;
  bool fallback = false;  // at least one braking-fallback step
  double min_distance = 0.0;
  double episode_return = 0.0;
  int follower_id = -1;        // merge successes: vehicle merged in front of
  double follower_coop = -1.0;
};

struct EvalReport {
  Method method = Method::kMpccBaseline;
  ScenarioKind scenario = ScenarioKind::kRampMerge;
  CoopSetting coop = CoopSetting::kMixed;
  std::uint64_t seed = 0;
  int n = 0;
  int success = 0;
  int collision = 0;
  int timeout = 0;
  double success_pct = 0.0;
  double collision_pct = 0.0;
  double timeout_pct = 0.0;
  double ttg_mean = 0.0;  // over this report's successful episodes
  double ttg_std = 0.0;
  std::int64_t infeasible_steps = 0;
  int fallback_episodes = 0;
  int collisions_without_fallback = 0;
  std::vector<EpisodeSummary> episodes;

  // Success times in episode order (empty slots skipped), for the joint
  // time-to-goal statistics across methods.
  std::vector<std::optional<double>> ttg_by_episode;
};

// Runs n matched-seed episodes (episode i uses the seed derived from
// (seed, i)) on a worker pool and aggregates in episode order. The policy
// is required for the learned methods. Throws MissingCheckpoint.
EvalReport evaluate(Method method, const Mlp* policy, const EvalConfig& cfg,
                    int n_episodes, std::uint64_t seed);

// One traced episode; returns its summary and writes `trace_path`.
EpisodeSummary rollout(Method method, const Mlp* policy, const EvalConfig& cfg,
                       std::uint64_t seed, const std::string& trace_path);

struct CoopHistogram {
  double lo = 0.0;
  double hi = 4.0;
  double bin_width = 0.5;
  std::vector<int> counts;  // (hi-lo)/bin_width bins

  int bin_of(double coop) const;
};

// Cooperation coefficient of the vehicle merged in front of, binned over
// successful merge episodes, read back from trace files.
CoopHistogram coop_histogram(const std::vector<std::string>& trace_paths);

// Same histogram from in-memory evaluation results.
CoopHistogram coop_histogram(const EvalReport& report);

// Time-to-goal samples over episodes where every report succeeded.
std::vector<std::vector<double>> jointly_successful_ttg(
    const std::vector<EvalReport>& reports);

}  // namespace intmpc
