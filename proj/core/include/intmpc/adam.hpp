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

#include "intmpc/mlp.hpp"

namespace intmpc {

struct AdamConfig {
  double lr = 3e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// First/second moment accumulators matching one network's parameters.
struct AdamState {
  AdamConfig config;
  std::vector<Eigen::MatrixXd> m_w, v_w;
  std::vector<Eigen::VectorXd> m_b, v_b;
  std::int64_t step = 0;

  static AdamState for_mlp(const Mlp& mlp, const AdamConfig& config = {});
};

// Standard bias-corrected update, in place.
void adam_step(Mlp& params, const MlpGradients& grads, AdamState& state);

// Scalar variant (used for the entropy temperature).
struct AdamScalar {
  AdamConfig config;
  double m = 0.0;
  double v = 0.0;
  std::int64_t step = 0;
};
double adam_scalar_step(double param, double grad, AdamScalar& state);

}  // namespace intmpc
