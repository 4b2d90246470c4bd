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

#include "intmpc/training.hpp"

#include <atomic>
#include <condition_variable>
#include <cstdio>
#include <deque>
#include <fstream>
#include <mutex>
#include <optional>
#include <thread>

#include "config_json.hpp"
#include "intmpc/errors.hpp"

namespace intmpc {

namespace {

using nlohmann::json;

constexpr std::uint64_t kActStream = 0xAC7;
constexpr std::uint64_t kUpdateStream = 0x0BDA7E;

const char* outcome_name(EpisodeOutcome::Kind k) {
  switch (k) {
    case EpisodeOutcome::Kind::kSuccess: return "success";
    case EpisodeOutcome::Kind::kCollision: return "collision";
    case EpisodeOutcome::Kind::kTimeout: return "timeout";
  }
  return "timeout";
}

struct EpisodeStats {
  int episode = 0;
  std::uint64_t seed = 0;
  EpisodeOutcome outcome;
  double ret = 0.0;
  int steps = 0;
  int infeasible = 0;
};

struct LossAccum {
  double q1 = 0.0, q2 = 0.0, policy = 0.0, entropy = 0.0;
  int n = 0;
  void add(const SacLosses& l) {
    q1 += l.q1;
    q2 += l.q2;
    policy += l.policy;
    entropy += l.entropy;
    n += 1;
  }
  void reset() { *this = LossAccum{}; }
};

void write_log_header(std::ofstream& out) {
  out << "episode,seed,outcome,return,steps,infeasible,q1_loss,q2_loss,"
         "policy_loss,alpha,entropy,buffer\n";
}

void write_log_row(std::ofstream& out, const EpisodeStats& ep, const LossAccum& loss,
                   double alpha, std::size_t buffer_size) {
  char line[320];
  const int n = std::max(1, loss.n);
  std::snprintf(line, sizeof(line),
                "%d,%llu,%s,%.6f,%d,%d,%.6f,%.6f,%.6f,%.6f,%.6f,%zu\n", ep.episode,
                static_cast<unsigned long long>(ep.seed), outcome_name(ep.outcome.kind),
                ep.ret, ep.steps, ep.infeasible, loss.q1 / n, loss.q2 / n,
                loss.policy / n, alpha, loss.entropy / n, buffer_size);
  out << line;
}

// Runs one episode against a fixed policy snapshot, appending its
// transitions (query-boundary granularity) to `sink`.
EpisodeStats run_training_episode(const TrainConfig& cfg, const Mlp& policy,
                                  EpisodeEngine& engine, int episode, Rng& act_rng,
                                  std::vector<Transition>* sink) {
  const std::uint64_t ep_seed = Rng::derive_seed(cfg.seed, static_cast<std::uint64_t>(episode));
  engine.begin(spawn_scenario(cfg.scenario, cfg.coop, ep_seed));

  EpisodeStats stats;
  stats.episode = episode;
  stats.seed = ep_seed;

  ObsVector pending_obs = ObsVector::Zero();
  double pending_raw = 0.0;
  double acc_reward = 0.0;
  bool have_pending = false;
  double v_ref = 0.0;
  int local_step = 0;

  while (!engine.done()) {
    if (local_step % cfg.k_cycles == 0) {
      const ObsVector obs = make_observation(engine.world()).encode();
      if (have_pending) {
        sink->push_back({pending_obs, pending_raw, acc_reward, obs, false});
      }
      const ActionSample a =
          sample_action(policy, obs, act_rng, false, cfg.sac.policy);
      v_ref = a.v_ref;
      pending_obs = obs;
      pending_raw = a.raw;
      acc_reward = 0.0;
      have_pending = true;
    }
    const EpisodeEngine::StepInfo info = cfg.method == "drl"
                                             ? engine.step_speed_track(v_ref)
                                             : engine.step_mpcc(v_ref);
    acc_reward += info.reward;
    stats.ret += info.reward;
    local_step += 1;

    if (engine.done() && have_pending) {
      const bool terminal =
          engine.outcome().kind != EpisodeOutcome::Kind::kTimeout;
      sink->push_back({pending_obs, pending_raw, acc_reward,
                       make_observation(engine.world()).encode(), terminal});
    }
  }
  stats.outcome = engine.outcome();
  stats.steps = engine.steps();
  stats.infeasible = engine.infeasible_steps();
  return stats;
}

EngineConfig engine_config(const TrainConfig& cfg) {
  EngineConfig e;
  e.planner = cfg.planner;
  e.prediction = cfg.prediction;
  e.reward = cfg.reward;
  e.collision_constraints = false;  // training runs without them
  e.dt = cfg.dt;
  return e;
}

TrainSummary train_single_worker(const TrainConfig& cfg, Sac& sac,
                                 std::ofstream& log) {
  Rng act_rng(Rng::derive_seed(cfg.seed, kActStream));
  Rng update_rng(Rng::derive_seed(cfg.seed, kUpdateStream));
  EpisodeEngine engine(engine_config(cfg));
  const std::size_t warmup =
      std::max<std::size_t>(cfg.warmup_transitions, static_cast<std::size_t>(cfg.sac.batch_size));

  TrainSummary summary;
  std::vector<Transition> batch;
  LossAccum loss;
  for (int ep = 0; ep < cfg.n_episodes; ++ep) {
    batch.clear();
    const std::uint64_t ep_seed =
        Rng::derive_seed(cfg.seed, static_cast<std::uint64_t>(ep));
    engine.begin(spawn_scenario(cfg.scenario, cfg.coop, ep_seed));

    EpisodeStats stats;
    stats.episode = ep;
    stats.seed = ep_seed;

    ObsVector pending_obs = ObsVector::Zero();
    double pending_raw = 0.0;
    double acc_reward = 0.0;
    bool have_pending = false;
    double v_ref = 0.0;
    int local_step = 0;

    while (!engine.done()) {
      if (local_step % cfg.k_cycles == 0) {
        const ObsVector obs = make_observation(engine.world()).encode();
        if (have_pending) {
          sac.buffer().push({pending_obs, pending_raw, acc_reward, obs, false});
          summary.transitions += 1;
        }
        const ActionSample a = sac.act(obs, act_rng, false);
        v_ref = a.v_ref;
        pending_obs = obs;
        pending_raw = a.raw;
        acc_reward = 0.0;
        have_pending = true;
      }
      const EpisodeEngine::StepInfo info = cfg.method == "drl"
                                               ? engine.step_speed_track(v_ref)
                                               : engine.step_mpcc(v_ref);
      acc_reward += info.reward;
      stats.ret += info.reward;
      summary.env_steps += 1;
      local_step += 1;

      if (engine.done() && have_pending) {
        const bool terminal =
            engine.outcome().kind != EpisodeOutcome::Kind::kTimeout;
        sac.buffer().push({pending_obs, pending_raw, acc_reward,
                           make_observation(engine.world()).encode(), terminal});
        summary.transitions += 1;
      }
      if (sac.buffer().size() >= warmup &&
          summary.env_steps % cfg.update_every == 0) {
        loss.add(sac.update(update_rng));
        summary.updates += 1;
      }
    }
    stats.outcome = engine.outcome();
    stats.steps = engine.steps();
    stats.infeasible = engine.infeasible_steps();
    write_log_row(log, stats, loss, sac.alpha(), sac.buffer().size());
    loss.reset();
    summary.episodes += 1;
  }
  return summary;
}

struct WorkerBatch {
  EpisodeStats stats;
  std::vector<Transition> transitions;
  int env_steps = 0;
};

TrainSummary train_multi_worker(const TrainConfig& cfg, Sac& sac,
                                std::ofstream& log) {
  std::mutex queue_mutex;
  std::condition_variable queue_cv;
  std::deque<WorkerBatch> queue;

  std::mutex snapshot_mutex;
  auto snapshot = std::make_shared<const Mlp>(sac.policy());

  std::atomic<int> next_episode{0};
  auto take_snapshot = [&] {
    std::lock_guard<std::mutex> lk(snapshot_mutex);
    return snapshot;
  };

  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(cfg.workers));
  for (int w = 0; w < cfg.workers; ++w) {
    workers.emplace_back([&, w] {
      EpisodeEngine engine(engine_config(cfg));
      Rng act_rng(Rng::derive_seed(cfg.seed, kActStream + 1 + static_cast<std::uint64_t>(w)));
      while (true) {
        const int ep = next_episode.fetch_add(1);
        if (ep >= cfg.n_episodes) break;
        WorkerBatch batch;
        const auto policy = take_snapshot();
        batch.stats = run_training_episode(cfg, *policy, engine, ep, act_rng,
                                           &batch.transitions);
        batch.env_steps = batch.stats.steps;
        {
          std::lock_guard<std::mutex> lk(queue_mutex);
          queue.push_back(std::move(batch));
        }
        queue_cv.notify_one();
      }
    });
  }

  Rng update_rng(Rng::derive_seed(cfg.seed, kUpdateStream));
  const std::size_t warmup =
      std::max<std::size_t>(cfg.warmup_transitions, static_cast<std::size_t>(cfg.sac.batch_size));
  TrainSummary summary;
  LossAccum loss;
  std::int64_t update_budget = 0;
  while (summary.episodes < cfg.n_episodes) {
    WorkerBatch batch;
    {
      std::unique_lock<std::mutex> lk(queue_mutex);
      queue_cv.wait(lk, [&] { return !queue.empty(); });
      batch = std::move(queue.front());
      queue.pop_front();
    }
    for (const auto& t : batch.transitions) sac.buffer().push(t);
    summary.transitions += static_cast<std::int64_t>(batch.transitions.size());
    summary.env_steps += batch.env_steps;
    update_budget += batch.env_steps / cfg.update_every;
    while (update_budget > 0 && sac.buffer().size() >= warmup) {
      loss.add(sac.update(update_rng));
      summary.updates += 1;
      update_budget -= 1;
    }
    {
      std::lock_guard<std::mutex> lk(snapshot_mutex);
      snapshot = std::make_shared<const Mlp>(sac.policy());
    }
    write_log_row(log, batch.stats, loss, sac.alpha(), sac.buffer().size());
    loss.reset();
    summary.episodes += 1;
  }
  for (auto& t : workers) t.join();
  return summary;
}

}  // namespace

TrainSummary train(const TrainConfig& cfg, const std::string& checkpoint_path,
                   const std::string& log_path) {
  if (cfg.method != "intmpc" && cfg.method != "drl") {
    throw ConfigError("unknown training method: " + cfg.method);
  }
  Sac sac(cfg.sac, cfg.seed);
  std::ofstream log(log_path);
  if (!log) throw ConfigError("cannot write training log: " + log_path);
  write_log_header(log);

  TrainSummary summary;
  if (cfg.n_episodes > 0) {
    summary = cfg.workers <= 1 ? train_single_worker(cfg, sac, log)
                               : train_multi_worker(cfg, sac, log);
  }
  sac.save_checkpoint(checkpoint_path);
  return summary;
}

TrainConfig load_train_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open training config: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("bad training config " + path + ": " + e.what());
  }

  TrainConfig c;
  c.sac.policy_hidden = j.value("policy_hidden", c.sac.policy_hidden);
  c.sac.q_hidden = j.value("q_hidden", c.sac.q_hidden);
  c.sac.lr = j.value("learning_rate", c.sac.lr);
  c.sac.gamma = j.value("discount", c.sac.gamma);
  c.sac.tau = j.value("tau", c.sac.tau);
  c.sac.initial_alpha = j.value("initial_alpha", c.sac.initial_alpha);
  c.sac.target_entropy = j.value("target_entropy", c.sac.target_entropy);
  c.sac.batch_size = j.value("batch_size", c.sac.batch_size);
  c.sac.target_update_every = j.value("target_update_every", c.sac.target_update_every);
  c.sac.buffer_capacity = j.value("buffer_capacity", c.sac.buffer_capacity);
  c.sac.policy.v_ref_max = j.value("v_ref_max", c.sac.policy.v_ref_max);

  c.reward.r_infeasible = j.value("r_infeasible", c.reward.r_infeasible);
  c.reward.r_collision = j.value("r_collision", c.reward.r_collision);
  c.reward.r_near = j.value("r_near", c.reward.r_near);
  c.reward.near_distance = j.value("near_distance", c.reward.near_distance);

  c.planner.horizon = j.value("stages", c.planner.horizon);
  c.planner.dt = j.value("dt", c.planner.dt);
  c.planner.weights.q_c = j.value("q_c", c.planner.weights.q_c);
  c.planner.weights.q_l = j.value("q_l", c.planner.weights.q_l);
  c.planner.weights.q_v = j.value("q_v", c.planner.weights.q_v);
  c.planner.weights.q_u = j.value("q_u", c.planner.weights.q_u);
  c.planner.weights.q_delta = j.value("q_delta", c.planner.weights.q_delta);
  c.planner.w_left = j.value("w_left", c.planner.w_left);
  c.planner.w_right = j.value("w_right", c.planner.w_right);

  c.k_cycles = j.value("k_cycles", c.k_cycles);
  c.n_episodes = j.value("n_episodes", c.n_episodes);
  c.workers = j.value("workers", c.workers);
  c.seed = j.value("seed", c.seed);
  c.update_every = j.value("update_every", c.update_every);
  c.warmup_transitions = j.value("warmup_transitions", c.warmup_transitions);
  c.method = j.value("method", c.method);
  c.dt = j.value("dt", c.dt);
  if (j.contains("coop")) c.coop = coop_setting_from_string(j.at("coop"));
  if (j.contains("prediction")) c.prediction = prediction_model_from_string(j.at("prediction"));
  if (j.contains("scenario_config")) {
    detail::scenario_from_json(j.at("scenario_config"), c.scenario);
  }
  c.scenario.prediction_horizon = c.planner.horizon * c.planner.dt;
  return c;
}

void save_train_config(const TrainConfig& c, const std::string& path) {
  json j;
  j["policy_hidden"] = c.sac.policy_hidden;
  j["q_hidden"] = c.sac.q_hidden;
  j["learning_rate"] = c.sac.lr;
  j["discount"] = c.sac.gamma;
  j["tau"] = c.sac.tau;
  j["initial_alpha"] = c.sac.initial_alpha;
  j["target_entropy"] = c.sac.target_entropy;
  j["batch_size"] = c.sac.batch_size;
  j["target_update_every"] = c.sac.target_update_every;
  j["buffer_capacity"] = c.sac.buffer_capacity;
  j["v_ref_max"] = c.sac.policy.v_ref_max;
  j["r_infeasible"] = c.reward.r_infeasible;
  j["r_collision"] = c.reward.r_collision;
  j["r_near"] = c.reward.r_near;
  j["near_distance"] = c.reward.near_distance;
  j["stages"] = c.planner.horizon;
  j["dt"] = c.planner.dt;
  j["q_c"] = c.planner.weights.q_c;
  j["q_l"] = c.planner.weights.q_l;
  j["q_v"] = c.planner.weights.q_v;
  j["q_u"] = c.planner.weights.q_u;
  j["q_delta"] = c.planner.weights.q_delta;
  j["w_left"] = c.planner.w_left;
  j["w_right"] = c.planner.w_right;
  j["k_cycles"] = c.k_cycles;
  j["n_episodes"] = c.n_episodes;
  j["workers"] = c.workers;
  j["seed"] = c.seed;
  j["update_every"] = c.update_every;
  j["warmup_transitions"] = c.warmup_transitions;
  j["method"] = c.method;
  j["coop"] = to_string(c.coop);
  j["prediction"] = to_string(c.prediction);
  j["scenario_config"] = detail::scenario_to_json(c.scenario);
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write training config: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace intmpc
