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

#include <map>
#include <string>
#include <vector>

#include "intmpc/evaluation.hpp"

namespace intmpc {

// Every table is written as CSV plus a plain-text rendering beside it
// (same stem, .txt). All numeric output uses fixed precision, so repeated
// runs produce byte-identical files.

void write_report_files(const EvalReport& report, const std::string& dir);

// Matched-seed multi-method comparison: outcome percentages, time-to-goal
// over jointly successful episodes, pairwise rank-sum p-values.
void write_comparison_files(const std::vector<EvalReport>& reports,
                            const std::string& dir);

void write_histogram_files(const CoopHistogram& hist, const std::string& dir);

enum class AblationKind { kWeights, kK, kPredictionModel };
AblationKind ablation_kind_from_string(const std::string& s);

struct AblationConfig {
  EvalConfig eval;
  int episodes_per_cell = 100;
  std::uint64_t seed = 7;
  std::vector<double> q_v_grid = {0.1, 1.0, 10.0};
  std::vector<double> v_ref_grid = {2.0, 3.0, 4.0};
  std::vector<int> k_grid = {1, 2, 3, 4};
  std::map<int, std::string> k_checkpoints;  // K value -> checkpoint path
  std::string checkpoint;                    // prediction-model ablation policy
  std::vector<CoopSetting> settings = {CoopSetting::kCooperative,
                                       CoopSetting::kMixed,
                                       CoopSetting::kNonCooperative};
};

// Runs the requested grid and writes its table files into `dir`.
void run_ablation(AblationKind kind, const AblationConfig& cfg, const std::string& dir);

// Minimal CSV reader for the plot tool (no quoting, comma separated).
std::vector<std::vector<std::string>> read_csv(const std::string& path);

}  // namespace intmpc
