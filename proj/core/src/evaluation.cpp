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

#include "intmpc/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <memory>
#include <thread>

#include "intmpc/errors.hpp"
#include "intmpc/trace.hpp"

namespace intmpc {

const char* to_string(Method m) {
  switch (m) {
    case Method::kIntMpc: return "intmpc";
    case Method::kMpccBaseline: return "mpcc";
    case Method::kDrlBaseline: return "drl";
  }
  return "mpcc";
}

Method method_from_string(const std::string& s) {
  if (s == "intmpc") return Method::kIntMpc;
  if (s == "mpcc") return Method::kMpccBaseline;
  if (s == "drl") return Method::kDrlBaseline;
  throw ConfigError("unknown method: " + s);
}

namespace {

EngineConfig engine_config(const EvalConfig& cfg, Method method) {
  EngineConfig e;
  e.planner = cfg.planner;
  e.prediction = cfg.prediction;
  e.reward = cfg.reward;
  // Evaluation keeps the collision constraints on for the planner methods.
  e.collision_constraints = method != Method::kDrlBaseline;
  e.dt = cfg.dt;
  return e;
}

// Nearest main-lane vehicle behind the ego at merge completion.
void record_follower(const TrafficWorld& world, EpisodeSummary* out) {
  const double ego_lon = world.lane_longitudinal(world.ego.position());
  double best = std::numeric_limits<double>::infinity();
  for (const auto& o : world.others) {
    const double gap = ego_lon - world.lane_longitudinal(o.state.position());
    if (gap > 0.0 && gap < best) {
      best = gap;
      out->follower_id = o.id;
      out->follower_coop = o.coop;
    }
  }
}

EpisodeSummary run_eval_episode(Method method, const Mlp* policy,
                                const EvalConfig& cfg, EpisodeEngine& engine,
                                int index, std::uint64_t episode_seed,
                                TraceWriter* trace) {
  engine.begin(spawn_scenario(cfg.scenario, cfg.coop, episode_seed));
  // Deterministic evaluation: the mean action is used and the policy is
  // queried every cycle.
  Rng rng(Rng::derive_seed(episode_seed, 0xEEE));

  EpisodeSummary s;
  s.index = index;
  s.seed = episode_seed;
  s.min_distance = std::numeric_limits<double>::infinity();

  while (!engine.done()) {
    double v_ref = cfg.baseline_v_ref;
    if (method != Method::kMpccBaseline) {
      const ObsVector obs = make_observation(engine.world()).encode();
      v_ref = sample_action(*policy, obs, rng, true, cfg.policy).v_ref;
    }
    const EpisodeEngine::StepInfo info = method == Method::kDrlBaseline
                                             ? engine.step_speed_track(v_ref)
                                             : engine.step_mpcc(v_ref);
    if (trace != nullptr) trace->record(engine.world(), info.applied);
    s.episode_return += info.reward;
    s.min_distance = std::min(s.min_distance, info.min_distance);
    if (info.infeasible) s.fallback = true;
  }
  s.outcome = engine.outcome();
  s.steps = engine.steps();
  s.infeasible_steps = engine.infeasible_steps();
  if (s.outcome.kind == EpisodeOutcome::Kind::kSuccess &&
      engine.world().scenario == ScenarioKind::kRampMerge) {
    record_follower(engine.world(), &s);
  }
  return s;
}

}  // namespace

EvalReport evaluate(Method method, const Mlp* policy, const EvalConfig& cfg,
                    int n_episodes, std::uint64_t seed) {
  if (method != Method::kMpccBaseline && policy == nullptr) {
    throw MissingCheckpoint(std::string(to_string(method)) +
                            " evaluation needs a policy checkpoint");
  }

  EvalReport report;
  report.method = method;
  report.scenario = cfg.scenario.kind;
  report.coop = cfg.coop;
  report.seed = seed;
  report.n = n_episodes;
  report.episodes.resize(static_cast<std::size_t>(n_episodes));

  const int workers =
      std::max(1, cfg.workers > 0
                      ? cfg.workers
                      : static_cast<int>(std::thread::hardware_concurrency()));
  std::atomic<int> next{0};
  auto work = [&] {
    EpisodeEngine engine(engine_config(cfg, method));
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= n_episodes) break;
      const std::uint64_t ep_seed =
          Rng::derive_seed(seed, static_cast<std::uint64_t>(i));
      std::unique_ptr<TraceWriter> trace;
      if (!cfg.trace_dir.empty()) {
        char name[64];
        std::snprintf(name, sizeof(name), "/episode_%05d.csv", i);
        trace = std::make_unique<TraceWriter>(cfg.trace_dir + name);
      }
      report.episodes[static_cast<std::size_t>(i)] =
          run_eval_episode(method, policy, cfg, engine, i, ep_seed, trace.get());
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  // Aggregation in episode order keeps the report deterministic.
  double ttg_sum = 0.0, ttg_sq = 0.0;
  report.ttg_by_episode.assign(static_cast<std::size_t>(n_episodes), std::nullopt);
  for (const auto& e : report.episodes) {
    report.infeasible_steps += e.infeasible_steps;
    if (e.fallback) report.fallback_episodes += 1;
    switch (e.outcome.kind) {
      case EpisodeOutcome::Kind::kSuccess:
        report.success += 1;
        ttg_sum += e.outcome.time_to_goal;
        ttg_sq += e.outcome.time_to_goal * e.outcome.time_to_goal;
        report.ttg_by_episode[static_cast<std::size_t>(e.index)] =
            e.outcome.time_to_goal;
        break;
      case EpisodeOutcome::Kind::kCollision:
        report.collision += 1;
        if (!e.fallback) report.collisions_without_fallback += 1;
        break;
      case EpisodeOutcome::Kind::kTimeout:
        report.timeout += 1;
        break;
    }
  }
  report.success_pct = 100.0 * report.success / std::max(1, report.n);
  report.collision_pct = 100.0 * report.collision / std::max(1, report.n);
  report.timeout_pct = 100.0 * report.timeout / std::max(1, report.n);
  if (report.success > 0) {
    report.ttg_mean = ttg_sum / report.success;
    const double var =
        std::max(0.0, ttg_sq / report.success - report.ttg_mean * report.ttg_mean);
    report.ttg_std = std::sqrt(var);
  }
  return report;
}

EpisodeSummary rollout(Method method, const Mlp* policy, const EvalConfig& cfg,
                       std::uint64_t seed, const std::string& trace_path) {
  if (method != Method::kMpccBaseline && policy == nullptr) {
    throw MissingCheckpoint(std::string(to_string(method)) +
                            " rollout needs a policy checkpoint");
  }
  EpisodeEngine engine(engine_config(cfg, method));
  TraceWriter trace(trace_path);
  return run_eval_episode(method, policy, cfg, engine, 0, seed, &trace);
}

int CoopHistogram::bin_of(double coop) const {
  const int n = static_cast<int>(counts.size());
  const int b = static_cast<int>((coop - lo) / bin_width);
  return std::clamp(b, 0, n - 1);
}

namespace {

CoopHistogram empty_histogram() {
  CoopHistogram h;
  h.counts.assign(static_cast<std::size_t>((h.hi - h.lo) / h.bin_width + 0.5), 0);
  return h;
}

}  // namespace

CoopHistogram coop_histogram(const std::vector<std::string>& trace_paths) {
  CoopHistogram h = empty_histogram();
  for (const auto& path : trace_paths) {
    const std::vector<TraceRecord> records = read_trace(path);
    if (records.empty()) continue;
    const double t_end = records.back().time;
    // Rows of the final step only.
    double ego_x = 0.0;
    bool have_ego = false;
    for (const auto& r : records) {
      if (r.time == t_end && r.id == kEgoId) {
        ego_x = r.x;
        have_ego = true;
      }
    }
    if (!have_ego) continue;
    double best_gap = std::numeric_limits<double>::infinity();
    double coop = -1.0;
    for (const auto& r : records) {
      if (r.time != t_end || r.id == kEgoId) continue;
      const double gap = ego_x - r.x;
      if (gap > 0.0 && gap < best_gap) {
        best_gap = gap;
        coop = r.coop;
      }
    }
    if (coop >= 0.0) h.counts[static_cast<std::size_t>(h.bin_of(coop))] += 1;
  }
  return h;
}

CoopHistogram coop_histogram(const EvalReport& report) {
  CoopHistogram h = empty_histogram();
  for (const auto& e : report.episodes) {
    if (e.outcome.kind == EpisodeOutcome::Kind::kSuccess && e.follower_coop >= 0.0) {
      h.counts[static_cast<std::size_t>(h.bin_of(e.follower_coop))] += 1;
    }
  }
  return h;
}

std::vector<std::vector<double>> jointly_successful_ttg(
    const std::vector<EvalReport>& reports) {
  std::vector<std::vector<double>> out(reports.size());
  if (reports.empty()) return out;
  const std::size_t n = reports.front().ttg_by_episode.size();
  for (std::size_t i = 0; i < n; ++i) {
    bool all = true;
    for (const auto& r : reports) {
      if (i >= r.ttg_by_episode.size() || !r.ttg_by_episode[i]) {
        all = false;
        break;
      }
    }
    if (!all) continue;
    for (std::size_t m = 0; m < reports.size(); ++m) {
      out[m].push_back(*reports[m].ttg_by_episode[i]);
    }
  }
  return out;
}

}  // namespace intmpc
