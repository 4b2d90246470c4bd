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

#include "intmpc/adam.hpp"

#include <cmath>

#include "intmpc/errors.hpp"

namespace intmpc {

AdamState AdamState::for_mlp(const Mlp& mlp, const AdamConfig& config) {
  AdamState s;
  s.config = config;
  for (int l = 0; l < mlp.layer_count(); ++l) {
    const auto ls = static_cast<std::size_t>(l);
    s.m_w.emplace_back(Eigen::MatrixXd::Zero(mlp.weights[ls].rows(), mlp.weights[ls].cols()));
    s.v_w.emplace_back(Eigen::MatrixXd::Zero(mlp.weights[ls].rows(), mlp.weights[ls].cols()));
    s.m_b.emplace_back(Eigen::VectorXd::Zero(mlp.biases[ls].size()));
    s.v_b.emplace_back(Eigen::VectorXd::Zero(mlp.biases[ls].size()));
  }
  return s;
}

void adam_step(Mlp& params, const MlpGradients& grads, AdamState& state) {
  if (grads.weights.size() != params.weights.size()) {
    throw ShapeMismatch("adam_step: gradient/parameter layer count mismatch");
  }
  state.step += 1;
  const auto& c = state.config;
  const double bc1 = 1.0 - std::pow(c.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(c.beta2, static_cast<double>(state.step));
  for (std::size_t l = 0; l < params.weights.size(); ++l) {
    state.m_w[l] = c.beta1 * state.m_w[l] + (1.0 - c.beta1) * grads.weights[l];
    state.v_w[l] = c.beta2 * state.v_w[l].array() +
                   (1.0 - c.beta2) * grads.weights[l].array().square();
    params.weights[l].array() -=
        c.lr * (state.m_w[l].array() / bc1) /
        ((state.v_w[l].array() / bc2).sqrt() + c.eps);

    state.m_b[l] = c.beta1 * state.m_b[l] + (1.0 - c.beta1) * grads.biases[l];
    state.v_b[l] = c.beta2 * state.v_b[l].array() +
                   (1.0 - c.beta2) * grads.biases[l].array().square();
    params.biases[l].array() -=
        c.lr * (state.m_b[l].array() / bc1) /
        ((state.v_b[l].array() / bc2).sqrt() + c.eps);
  }
}

double adam_scalar_step(double param, double grad, AdamScalar& state) {
  state.step += 1;
  const auto& c = state.config;
  state.m = c.beta1 * state.m + (1.0 - c.beta1) * grad;
  state.v = c.beta2 * state.v + (1.0 - c.beta2) * grad * grad;
  const double m_hat = state.m / (1.0 - std::pow(c.beta1, static_cast<double>(state.step)));
  const double v_hat = state.v / (1.0 - std::pow(c.beta2, static_cast<double>(state.step)));
  return param - c.lr * m_hat / (std::sqrt(v_hat) + c.eps);
}

}  // namespace intmpc
