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

#include "intmpc/tables.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "intmpc/errors.hpp"
#include "intmpc/rank_sum.hpp"
#include "intmpc/sac.hpp"

namespace intmpc {

namespace {

const char* outcome_name(EpisodeOutcome::Kind k) {
  switch (k) {
    case EpisodeOutcome::Kind::kSuccess: return "success";
    case EpisodeOutcome::Kind::kCollision: return "collision";
    case EpisodeOutcome::Kind::kTimeout: return "timeout";
  }
  return "timeout";
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write: " + path);
  return out;
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

void write_text(const std::string& path, const std::string& content) {
  auto out = open_out(path);
  out << content;
}

std::string summary_row(const EvalReport& r) {
  return fmt("%s,%s,%s,%llu,%d,%d,%d,%d,%.4f,%.4f,%.4f,%.4f,%.4f,%lld,%d,%d\n",
             to_string(r.method), to_string(r.scenario), to_string(r.coop),
             static_cast<unsigned long long>(r.seed), r.n, r.success, r.collision,
             r.timeout, r.success_pct, r.collision_pct, r.timeout_pct, r.ttg_mean,
             r.ttg_std, static_cast<long long>(r.infeasible_steps),
             r.fallback_episodes, r.collisions_without_fallback);
}

constexpr const char* kSummaryHeader =
    "method,scenario,coop,seed,n,success,collision,timeout,success_pct,"
    "collision_pct,timeout_pct,ttg_mean,ttg_std,infeasible_steps,"
    "fallback_episodes,collisions_without_fallback\n";

}  // namespace

void write_report_files(const EvalReport& r, const std::string& dir) {
  const std::string stem = dir + "/report_" + to_string(r.method) + "_" +
                           to_string(r.scenario) + "_" + to_string(r.coop);
  {
    auto out = open_out(stem + ".csv");
    out << kSummaryHeader << summary_row(r);
  }
  {
    auto out = open_out(stem + "_episodes.csv");
    out << "index,seed,outcome,time_to_goal,steps,infeasible_steps,fallback,"
           "min_distance,return\n";
    for (const auto& e : r.episodes) {
      const double ttg = e.outcome.kind == EpisodeOutcome::Kind::kSuccess
                             ? e.outcome.time_to_goal
                             : -1.0;
      out << fmt("%d,%llu,%s,%.4f,%d,%d,%d,%.4f,%.4f\n", e.index,
                 static_cast<unsigned long long>(e.seed),
                 outcome_name(e.outcome.kind), ttg, e.steps, e.infeasible_steps,
                 e.fallback ? 1 : 0, e.min_distance, e.episode_return);
    }
  }
  std::string txt;
  txt += fmt("%s / %s / %s  (n=%d, seed=%llu)\n", to_string(r.method),
             to_string(r.scenario), to_string(r.coop), r.n,
             static_cast<unsigned long long>(r.seed));
  txt += fmt("  success   %6.2f %%  (%d)\n", r.success_pct, r.success);
  txt += fmt("  collision %6.2f %%  (%d)\n", r.collision_pct, r.collision);
  txt += fmt("  timeout   %6.2f %%  (%d)\n", r.timeout_pct, r.timeout);
  if (r.success > 0) {
    txt += fmt("  time-to-goal %.2f +/- %.2f s over %d successes\n", r.ttg_mean,
               r.ttg_std, r.success);
  }
  txt += fmt("  infeasible steps %lld, fallback episodes %d, collisions without "
             "fallback %d\n",
             static_cast<long long>(r.infeasible_steps), r.fallback_episodes,
             r.collisions_without_fallback);
  write_text(stem + ".txt", txt);
}

void write_comparison_files(const std::vector<EvalReport>& reports,
                            const std::string& dir) {
  {
    auto out = open_out(dir + "/outcomes.csv");
    out << kSummaryHeader;
    for (const auto& r : reports) out << summary_row(r);
  }

  // Group matched reports (same scenario + coop) for the joint statistics.
  std::map<std::pair<int, int>, std::vector<const EvalReport*>> groups;
  for (const auto& r : reports) {
    groups[{static_cast<int>(r.scenario), static_cast<int>(r.coop)}].push_back(&r);
  }

  auto ttg_csv = open_out(dir + "/time_to_goal.csv");
  ttg_csv << "scenario,coop,method,n_joint,ttg_mean,ttg_std\n";
  auto rs_csv = open_out(dir + "/rank_sum.csv");
  rs_csv << "scenario,coop,method_a,method_b,u_statistic,p_value\n";
  std::string txt;

  for (const auto& [key, group] : groups) {
    std::vector<EvalReport> local;
    for (const auto* r : group) local.push_back(*r);
    const auto joint = jointly_successful_ttg(local);
    const std::size_t n_joint = joint.empty() ? 0 : joint.front().size();
    txt += fmt("%s / %s: %zu jointly successful episodes\n",
               to_string(local.front().scenario), to_string(local.front().coop),
               n_joint);
    for (std::size_t m = 0; m < local.size(); ++m) {
      double mean = 0.0, sq = 0.0;
      for (double v : joint[m]) {
        mean += v;
        sq += v * v;
      }
      const double nj = std::max<std::size_t>(1, joint[m].size());
      mean /= nj;
      const double sd = std::sqrt(std::max(0.0, sq / nj - mean * mean));
      ttg_csv << fmt("%s,%s,%s,%zu,%.4f,%.4f\n", to_string(local[m].scenario),
                     to_string(local[m].coop), to_string(local[m].method),
                     joint[m].size(), mean, sd);
      txt += fmt("  %-7s ttg %.2f +/- %.2f s\n", to_string(local[m].method), mean, sd);
    }
    for (std::size_t i = 0; i < local.size(); ++i) {
      for (std::size_t j = i + 1; j < local.size(); ++j) {
        if (joint[i].empty() || joint[j].empty()) continue;
        const RankSumResult rs = rank_sum_test(joint[i], joint[j]);
        rs_csv << fmt("%s,%s,%s,%s,%.4f,%.6f\n", to_string(local[i].scenario),
                      to_string(local[i].coop), to_string(local[i].method),
                      to_string(local[j].method), rs.u_statistic, rs.p_value);
        txt += fmt("  rank-sum %s vs %s: U=%.1f p=%.4f\n", to_string(local[i].method),
                   to_string(local[j].method), rs.u_statistic, rs.p_value);
      }
    }
  }
  write_text(dir + "/comparison.txt", txt);
}

void write_histogram_files(const CoopHistogram& h, const std::string& dir) {
  {
    auto out = open_out(dir + "/coop_histogram.csv");
    out << "bin_lo,bin_hi,count\n";
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
      out << fmt("%.2f,%.2f,%d\n", h.lo + i * h.bin_width,
                 h.lo + (i + 1) * h.bin_width, h.counts[i]);
    }
  }
  std::string txt = "cooperation coefficient of the vehicle merged in front of\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    txt += fmt("  [%.1f, %.1f)  %d\n", h.lo + i * h.bin_width,
               h.lo + (i + 1) * h.bin_width, h.counts[i]);
  }
  write_text(dir + "/coop_histogram.txt", txt);
}

AblationKind ablation_kind_from_string(const std::string& s) {
  if (s == "weights") return AblationKind::kWeights;
  if (s == "k") return AblationKind::kK;
  if (s == "prediction") return AblationKind::kPredictionModel;
  throw ConfigError("unknown ablation kind: " + s);
}

namespace {

void run_weights_ablation(const AblationConfig& cfg, const std::string& dir) {
  auto out = open_out(dir + "/ablation_weights.csv");
  out << "q_v,v_ref,n,success_pct,collision_pct,timeout_pct\n";
  std::string txt = "success % / collision % / timeout %\n";
  for (double v_ref : cfg.v_ref_grid) {
    txt += fmt("v_ref=%.1f:", v_ref);
    for (double q_v : cfg.q_v_grid) {
      EvalConfig ec = cfg.eval;
      ec.planner.weights.q_v = q_v;
      ec.baseline_v_ref = v_ref;
      const EvalReport r = evaluate(Method::kMpccBaseline, nullptr, ec,
                                    cfg.episodes_per_cell, cfg.seed);
      out << fmt("%.2f,%.2f,%d,%.4f,%.4f,%.4f\n", q_v, v_ref, r.n, r.success_pct,
                 r.collision_pct, r.timeout_pct);
      txt += fmt("  [q_v=%.1f] %.0f/%.0f/%.0f", q_v, r.success_pct, r.collision_pct,
                 r.timeout_pct);
    }
    txt += "\n";
  }
  write_text(dir + "/ablation_weights.txt", txt);
}

void run_k_ablation(const AblationConfig& cfg, const std::string& dir) {
  auto out = open_out(dir + "/ablation_k.csv");
  out << "k,scenario,coop,n,success_pct,collision_pct,timeout_pct\n";
  std::string txt;
  for (int k : cfg.k_grid) {
    const auto it = cfg.k_checkpoints.find(k);
    if (it == cfg.k_checkpoints.end()) {
      throw MissingCheckpoint("k ablation: no checkpoint for K = " +
                              std::to_string(k));
    }
    const Mlp policy = load_policy_from_checkpoint(it->second);
    txt += fmt("K=%d:", k);
    for (CoopSetting s : cfg.settings) {
      EvalConfig ec = cfg.eval;
      ec.coop = s;
      const EvalReport r =
          evaluate(Method::kIntMpc, &policy, ec, cfg.episodes_per_cell, cfg.seed);
      out << fmt("%d,%s,%s,%d,%.4f,%.4f,%.4f\n", k, to_string(r.scenario),
                 to_string(r.coop), r.n, r.success_pct, r.collision_pct,
                 r.timeout_pct);
      txt += fmt("  [%s] %.0f/%.0f/%.0f", to_string(s), r.success_pct,
                 r.collision_pct, r.timeout_pct);
    }
    txt += "\n";
  }
  write_text(dir + "/ablation_k.txt", txt);
}

void run_prediction_ablation(const AblationConfig& cfg, const std::string& dir) {
  if (cfg.checkpoint.empty()) {
    throw MissingCheckpoint("prediction ablation needs a policy checkpoint");
  }
  const Mlp policy = load_policy_from_checkpoint(cfg.checkpoint);
  const PredictionModel models[] = {
      PredictionModel::kIdm, PredictionModel::kConstantVelocity,
      PredictionModel::kConstantVelocityPath, PredictionModel::kMpccSelf};
  auto out = open_out(dir + "/ablation_prediction.csv");
  out << "model,scenario,coop,n,success_pct,collision_pct,timeout_pct\n";
  std::string txt;
  for (PredictionModel m : models) {
    txt += fmt("%-8s:", to_string(m));
    for (CoopSetting s : cfg.settings) {
      EvalConfig ec = cfg.eval;
      ec.coop = s;
      ec.prediction = m;
      const EvalReport r =
          evaluate(Method::kIntMpc, &policy, ec, cfg.episodes_per_cell, cfg.seed);
      out << fmt("%s,%s,%s,%d,%.4f,%.4f,%.4f\n", to_string(m), to_string(r.scenario),
                 to_string(r.coop), r.n, r.success_pct, r.collision_pct,
                 r.timeout_pct);
      txt += fmt("  [%s] %.0f/%.0f/%.0f", to_string(s), r.success_pct,
                 r.collision_pct, r.timeout_pct);
    }
    txt += "\n";
  }
  write_text(dir + "/ablation_prediction.txt", txt);
}

}  // namespace

void run_ablation(AblationKind kind, const AblationConfig& cfg, const std::string& dir) {
  switch (kind) {
    case AblationKind::kWeights:
      run_weights_ablation(cfg, dir);
      break;
    case AblationKind::kK:
      run_k_ablation(cfg, dir);
      break;
    case AblationKind::kPredictionModel:
      run_prediction_ablation(cfg, dir);
      break;
  }
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open csv: " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace intmpc
