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

#include "intmpc/sac.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "intmpc/errors.hpp"

namespace intmpc {

namespace {

constexpr double kLog2Pi = 1.8378770664093453;

std::vector<int> full_sizes(int in, const std::vector<int>& hidden, int out) {
  std::vector<int> s;
  s.push_back(in);
  s.insert(s.end(), hidden.begin(), hidden.end());
  s.push_back(out);
  return s;
}

void polyak(Mlp& target, const Mlp& online, double tau) {
  for (std::size_t l = 0; l < target.weights.size(); ++l) {
    target.weights[l] = (1.0 - tau) * target.weights[l] + tau * online.weights[l];
    target.biases[l] = (1.0 - tau) * target.biases[l] + tau * online.biases[l];
  }
}

void write_u64(std::ostream& out, std::uint64_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint64_t read_u64(std::istream& in) {
  std::uint64_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  return v;
}

}  // namespace

Sac::Sac(const SacConfig& cfg, std::uint64_t seed)
    : cfg_(cfg),
      log_alpha_(std::log(cfg.initial_alpha)),
      buffer_(cfg.buffer_capacity) {
  Rng rng(Rng::derive_seed(seed, 17));
  policy_ = Mlp::random(full_sizes(kObservationDim, cfg_.policy_hidden, 2), rng);
  q1_ = Mlp::random(full_sizes(kObservationDim + 1, cfg_.q_hidden, 1), rng);
  q2_ = Mlp::random(full_sizes(kObservationDim + 1, cfg_.q_hidden, 1), rng);
  q1_target_ = q1_;
  q2_target_ = q2_;
  const AdamConfig adam{cfg_.lr, 0.9, 0.999, 1e-8};
  opt_policy_ = AdamState::for_mlp(policy_, adam);
  opt_q1_ = AdamState::for_mlp(q1_, adam);
  opt_q2_ = AdamState::for_mlp(q2_, adam);
  opt_alpha_.config = adam;
}

double Sac::alpha() const { return std::exp(log_alpha_); }

double Sac::q_value(const ObsVector& obs, double squashed) const {
  Eigen::VectorXd in(kObservationDim + 1);
  in.head(kObservationDim) = obs;
  in(kObservationDim) = squashed;
  return forward(q1_, in)(0);
}

SacLosses Sac::update(Rng& rng) {
  const int B = cfg_.batch_size;
  if (buffer_.size() < static_cast<std::size_t>(B)) {
    throw InsufficientData("replay buffer holds " + std::to_string(buffer_.size()) +
                           " transitions, batch needs " + std::to_string(B));
  }

  Eigen::MatrixXd obs(kObservationDim, B);
  Eigen::MatrixXd next_obs(kObservationDim, B);
  Eigen::VectorXd action(B);      // squashed to [-1, 1]
  Eigen::VectorXd reward(B);
  Eigen::VectorXd not_done(B);
  for (int i = 0; i < B; ++i) {
    const std::size_t idx =
        static_cast<std::size_t>(rng.uniform01() * static_cast<double>(buffer_.size()));
    const Transition& t = buffer_.at(std::min(idx, buffer_.size() - 1));
    obs.col(i) = t.observation;
    next_obs.col(i) = t.next_observation;
    action(i) = std::tanh(t.raw_action);
    reward(i) = t.reward;
    not_done(i) = t.done ? 0.0 : 1.0;
  }

  const double alpha_now = alpha();

  // Bootstrap targets from the target critics and a fresh policy sample.
  Eigen::MatrixXd next_pol = forward_batch(policy_, next_obs);
  Eigen::VectorXd target_q(B);
  {
    Eigen::MatrixXd qin(kObservationDim + 1, B);
    qin.topRows(kObservationDim) = next_obs;
    Eigen::VectorXd next_logpi(B);
    for (int i = 0; i < B; ++i) {
      const double mean = next_pol(0, i);
      const double log_std =
          std::clamp(next_pol(1, i), cfg_.policy.log_std_min, cfg_.policy.log_std_max);
      const double z = mean + std::exp(log_std) * rng.normal();
      next_logpi(i) = tanh_gaussian_log_prob(z, mean, log_std, cfg_.policy.v_ref_max);
      qin(kObservationDim, i) = std::tanh(z);
    }
    const Eigen::MatrixXd q1t = forward_batch(q1_target_, qin);
    const Eigen::MatrixXd q2t = forward_batch(q2_target_, qin);
    for (int i = 0; i < B; ++i) {
      const double qmin = std::min(q1t(0, i), q2t(0, i));
      target_q(i) =
          reward(i) + cfg_.gamma * not_done(i) * (qmin - alpha_now * next_logpi(i));
    }
  }

  SacLosses losses;

  // Critic regression on the squared Bellman error.
  Eigen::MatrixXd qin(kObservationDim + 1, B);
  qin.topRows(kObservationDim) = obs;
  qin.row(kObservationDim) = action.transpose();
  MlpCache c1, c2;
  const Eigen::MatrixXd q1v = forward_batch(q1_, qin, &c1);
  const Eigen::MatrixXd q2v = forward_batch(q2_, qin, &c2);
  MlpGradients g1 = MlpGradients::zeros_like(q1_);
  MlpGradients g2 = MlpGradients::zeros_like(q2_);
  Eigen::MatrixXd up1(1, B), up2(1, B);
  for (int i = 0; i < B; ++i) {
    const double e1 = q1v(0, i) - target_q(i);
    const double e2 = q2v(0, i) - target_q(i);
    losses.q1 += e1 * e1;
    losses.q2 += e2 * e2;
    up1(0, i) = 2.0 * e1 / B;
    up2(0, i) = 2.0 * e2 / B;
  }
  losses.q1 /= B;
  losses.q2 /= B;
  backward_batch(q1_, c1, up1, g1);
  backward_batch(q2_, c2, up2, g2);
  adam_step(q1_, g1, opt_q1_);
  adam_step(q2_, g2, opt_q2_);

  // Actor: reparameterized gradient of alpha*logpi - min Q.
  MlpCache cp;
  const Eigen::MatrixXd pol = forward_batch(policy_, obs, &cp);
  Eigen::VectorXd xi(B), z(B), y(B), logpi(B), sigma(B);
  Eigen::VectorXd clamped(B);
  for (int i = 0; i < B; ++i) {
    const double mean = pol(0, i);
    const double raw_log_std = pol(1, i);
    const double log_std =
        std::clamp(raw_log_std, cfg_.policy.log_std_min, cfg_.policy.log_std_max);
    clamped(i) = raw_log_std == log_std ? 1.0 : 0.0;
    sigma(i) = std::exp(log_std);
    xi(i) = rng.normal();
    z(i) = mean + sigma(i) * xi(i);
    y(i) = std::tanh(z(i));
    logpi(i) = tanh_gaussian_log_prob(z(i), mean, log_std, cfg_.policy.v_ref_max);
  }

  // dQmin/daction through the argmin critic, parameters frozen.
  Eigen::MatrixXd qpin(kObservationDim + 1, B);
  qpin.topRows(kObservationDim) = obs;
  qpin.row(kObservationDim) = y.transpose();
  MlpCache cq1, cq2;
  const Eigen::MatrixXd q1p = forward_batch(q1_, qpin, &cq1);
  const Eigen::MatrixXd q2p = forward_batch(q2_, qpin, &cq2);
  Eigen::MatrixXd pick1 = Eigen::MatrixXd::Zero(1, B);
  Eigen::MatrixXd pick2 = Eigen::MatrixXd::Zero(1, B);
  for (int i = 0; i < B; ++i) {
    if (q1p(0, i) <= q2p(0, i)) {
      pick1(0, i) = 1.0;
    } else {
      pick2(0, i) = 1.0;
    }
    losses.mean_q += std::min(q1p(0, i), q2p(0, i)) / B;
  }
  MlpGradients scratch1 = MlpGradients::zeros_like(q1_);
  MlpGradients scratch2 = MlpGradients::zeros_like(q2_);
  const Eigen::MatrixXd dq1 = backward_batch(q1_, cq1, pick1, scratch1);
  const Eigen::MatrixXd dq2 = backward_batch(q2_, cq2, pick2, scratch2);
  const Eigen::VectorXd dq_dy = (dq1.row(kObservationDim) + dq2.row(kObservationDim));

  Eigen::MatrixXd up_pol(2, B);
  for (int i = 0; i < B; ++i) {
    const double dsquash = 1.0 - y(i) * y(i);
    const double dl_dz = alpha_now * 2.0 * y(i) - dq_dy(i) * dsquash;
    up_pol(0, i) = dl_dz / B;
    up_pol(1, i) = clamped(i) * (dl_dz * sigma(i) * xi(i) - alpha_now) / B;
    losses.policy += (alpha_now * logpi(i) -
                      std::min(q1p(0, i), q2p(0, i))) / B;
    losses.entropy += -logpi(i) / B;
  }
  MlpGradients gp = MlpGradients::zeros_like(policy_);
  backward_batch(policy_, cp, up_pol, gp);
  adam_step(policy_, gp, opt_policy_);

  // Temperature toward the entropy floor (logpi detached).
  const double alpha_grad = -(logpi.mean() + cfg_.target_entropy) * alpha_now;
  log_alpha_ = adam_scalar_step(log_alpha_, alpha_grad, opt_alpha_);
  losses.alpha_value = alpha();

  updates_ += 1;
  if (cfg_.target_update_every > 0 && updates_ % cfg_.target_update_every == 0) {
    polyak(q1_target_, q1_, cfg_.tau);
    polyak(q2_target_, q2_, cfg_.tau);
  }
  return losses;
}

void Sac::save_checkpoint(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write checkpoint: " + path);
  out.write("SAC1", 4);
  save_mlp(policy_, out);
  save_mlp(q1_, out);
  save_mlp(q2_, out);
  save_mlp(q1_target_, out);
  save_mlp(q2_target_, out);
  out.write(reinterpret_cast<const char*>(&log_alpha_), sizeof(log_alpha_));
  write_u64(out, static_cast<std::uint64_t>(updates_));
}

void Sac::load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingCheckpoint("cannot open checkpoint: " + path);
  char magic[4] = {};
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != "SAC1") {
    throw ConfigError("not a SAC1 checkpoint: " + path);
  }
  policy_ = load_mlp(in);
  q1_ = load_mlp(in);
  q2_ = load_mlp(in);
  q1_target_ = load_mlp(in);
  q2_target_ = load_mlp(in);
  in.read(reinterpret_cast<char*>(&log_alpha_), sizeof(log_alpha_));
  updates_ = static_cast<std::int64_t>(read_u64(in));
  if (!in) throw ConfigError("truncated checkpoint: " + path);
  const AdamConfig adam{cfg_.lr, 0.9, 0.999, 1e-8};
  opt_policy_ = AdamState::for_mlp(policy_, adam);
  opt_q1_ = AdamState::for_mlp(q1_, adam);
  opt_q2_ = AdamState::for_mlp(q2_, adam);
}

Mlp load_policy_from_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingCheckpoint("cannot open checkpoint: " + path);
  char magic[4] = {};
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != "SAC1") {
    throw ConfigError("not a SAC1 checkpoint: " + path);
  }
  return load_mlp(in);
}

}  // namespace intmpc
