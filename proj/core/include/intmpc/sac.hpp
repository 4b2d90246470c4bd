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

#include "intmpc/adam.hpp"
#include "intmpc/policy.hpp"
#include "intmpc/replay_buffer.hpp"

namespace intmpc {

struct SacConfig {
  std::vector<int> policy_hidden = {256, 256};
  std::vector<int> q_hidden = {256, 256};
  double lr = 3e-4;
  double gamma = 0.99;
  double tau = 5e-3;
  double initial_alpha = 1.0;
  double target_entropy = -1.0;
  int batch_size = 2048;
  int target_update_every = 1;
  std::size_t buffer_capacity = 1000000;
  PolicyConfig policy;
};

struct SacLosses {
  double q1 = 0.0;
  double q2 = 0.0;
  double policy = 0.0;
  double alpha_value = 0.0;
  double entropy = 0.0;
  double mean_q = 0.0;
};

// Off-policy maximum entropy learner: squashed-Gaussian actor, twin
// critics with Polyak-averaged targets, and temperature tuned toward the
// entropy floor. Gradients are composed manually from the network backward
// passes; there is no autodiff graph behind this.
class Sac {
 public:
  Sac(const SacConfig& cfg, std::uint64_t seed);

  ActionSample act(const ObsVector& obs, Rng& rng, bool deterministic) const {
    return sample_action(policy_, obs, rng, deterministic, cfg_.policy);
  }

  ReplayBuffer& buffer() { return buffer_; }
  const ReplayBuffer& buffer() const { return buffer_; }

  // One gradient step on a sampled batch. Throws InsufficientData until the
  // buffer holds one batch.
  SacLosses update(Rng& rng);

  const Mlp& policy() const { return policy_; }
  const Mlp& q1() const { return q1_; }
  const Mlp& q1_target() const { return q1_target_; }
  double alpha() const;
  std::int64_t updates() const { return updates_; }
  const SacConfig& config() const { return cfg_; }

  // Critic value of an (observation, squashed action) pair.
  double q_value(const ObsVector& obs, double squashed) const;

  void save_checkpoint(const std::string& path) const;
  void load_checkpoint(const std::string& path);

  // Overwrite the Polyak factor (test hook for the tau = 1 limit).
  void set_tau(double tau) { cfg_.tau = tau; }

 private:
  SacConfig cfg_;
  Mlp policy_, q1_, q2_, q1_target_, q2_target_;
  AdamState opt_policy_, opt_q1_, opt_q2_;
  AdamScalar opt_alpha_;
  double log_alpha_ = 0.0;
  ReplayBuffer buffer_;
  std::int64_t updates_ = 0;
};

// Policy block of a stored checkpoint (enough to run evaluations).
Mlp load_policy_from_checkpoint(const std::string& path);

}  // namespace intmpc
