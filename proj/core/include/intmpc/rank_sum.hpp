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

#include <vector>

namespace intmpc {

struct RankSumResult {
  double u_statistic = 0.0;  // U of the first sample
  double p_value = 1.0;      // two sided
};

// Two-sided Mann-Whitney U test with normal approximation and tie
// correction. Fully tied data has zero variance and reports p = 1.
// Throws EmptySample when either sample is empty.
RankSumResult rank_sum_test(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace intmpc
