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

#include "intmpc/episode.hpp"
#include "intmpc/sac.hpp"
#include "intmpc/scenario.hpp"

namespace intmpc {

// Joint training of the velocity-reference policy with the local planner
// in the loop. Collision constraints stay OFF during training; infeasible
// plans brake and feed the reward signal instead of raising errors.
struct TrainConfig {
  SacConfig sac;
  ScenarioConfig scenario;
  CoopSetting coop = CoopSetting::kMixed;
  PredictionModel prediction = PredictionModel::kConstantVelocity;
  PlannerConfig planner;
  RewardConfig reward;

  int k_cycles = 2;          // control cycles per policy query
  int n_episodes = 2000;
  int workers = 7;
  std::uint64_t seed = 1;
  int update_every = 1;      // environment steps per learner update
  std::size_t warmup_transitions = 20480;  // 10 batches
  std::string method = "intmpc";  // "intmpc" or "drl" (speed tracking)
  double dt = 0.1;
};

TrainConfig load_train_config(const std::string& path);
void save_train_config(const TrainConfig& cfg, const std::string& path);

struct TrainSummary {
  int episodes = 0;
  std::int64_t env_steps = 0;
  std::int64_t updates = 0;
  std::int64_t transitions = 0;
};

// Runs the configured number of episodes, writes the checkpoint and a
// line-delimited per-episode log. With one worker the run is bit
// deterministic in the seed.
TrainSummary train(const TrainConfig& cfg, const std::string& checkpoint_path,
                   const std::string& log_path);

}  // namespace intmpc
