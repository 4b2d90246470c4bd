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

#include "intmpc/rank_sum.hpp"

#include <algorithm>
#include <cmath>

#include "intmpc/errors.hpp"

namespace intmpc {

RankSumResult rank_sum_test(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) {
    throw EmptySample("rank_sum_test requires two nonempty samples");
  }
  const double n1 = static_cast<double>(a.size());
  const double n2 = static_cast<double>(b.size());
  const std::size_t n = a.size() + b.size();

  // Average ranks over the pooled sample.
  std::vector<std::pair<double, int>> pooled;  // (value, origin: 0 = a, 1 = b)
  pooled.reserve(n);
  for (double v : a) pooled.emplace_back(v, 0);
  for (double v : b) pooled.emplace_back(v, 1);
  std::sort(pooled.begin(), pooled.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });

  double rank_sum_a = 0.0;
  double tie_term = 0.0;  // sum of t^3 - t over tie groups
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && pooled[j + 1].first == pooled[i].first) ++j;
    const double t = static_cast<double>(j - i + 1);
    const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) {
      if (pooled[k].second == 0) rank_sum_a += avg_rank;
    }
    tie_term += t * t * t - t;
    i = j + 1;
  }

  RankSumResult res;
  res.u_statistic = rank_sum_a - n1 * (n1 + 1.0) / 2.0;

  const double mean_u = n1 * n2 / 2.0;
  const double nn = static_cast<double>(n);
  const double var_u =
      n1 * n2 / 12.0 * ((nn + 1.0) - tie_term / (nn * (nn - 1.0)));
  if (var_u <= 0.0) {
    res.p_value = 1.0;  // every observation tied
    return res;
  }
  const double z = (res.u_statistic - mean_u) / std::sqrt(var_u);
  res.p_value = std::erfc(std::abs(z) / std::sqrt(2.0));
  res.p_value = std::min(1.0, res.p_value);
  return res;
}

}  // namespace intmpc
