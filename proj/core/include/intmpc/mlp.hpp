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

#include <Eigen/Core>
#include <iosfwd>
#include <string>
#include <vector>

#include "intmpc/rng.hpp"

namespace intmpc {

// Dense network with ReLU hidden layers and a linear output. Plain value
// type: parameter snapshots are copies and safe to share across threads.
struct Mlp {
  std::vector<int> sizes;                // input, hidden..., output
  std::vector<Eigen::MatrixXd> weights;  // [l]: sizes[l+1] x sizes[l]
  std::vector<Eigen::VectorXd> biases;   // [l]: sizes[l+1]

  static Mlp zeros(const std::vector<int>& sizes);
  // Uniform fan-in init: sqrt(6/fan_in) on ReLU layers, sqrt(1/fan_in) on
  // the linear output; biases start at zero.
  static Mlp random(const std::vector<int>& sizes, Rng& rng);

  int input_size() const { return sizes.front(); }
  int output_size() const { return sizes.back(); }
  int layer_count() const { return static_cast<int>(weights.size()); }
};

// Recorded activations of one forward pass; inputs are matrix columns.
struct MlpCache {
  std::vector<Eigen::MatrixXd> act;  // act[0] = input, act[L] = output
};

// Same shapes as the network parameters; backward accumulates into it.
struct MlpGradients {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;

  static MlpGradients zeros_like(const Mlp& mlp);
  void set_zero();
};

Eigen::VectorXd forward(const Mlp& mlp, const Eigen::VectorXd& input);

// Column-per-sample batched forward; records activations when cache given.
Eigen::MatrixXd forward_batch(const Mlp& mlp, const Eigen::MatrixXd& inputs,
                              MlpCache* cache = nullptr);

// Reverse-mode pass for the recorded forward. `upstream` holds dL/doutput
// per column; parameter gradients are summed over the batch and added into
// `grads`. Returns dL/dinput.
Eigen::MatrixXd backward_batch(const Mlp& mlp, const MlpCache& cache,
                               const Eigen::MatrixXd& upstream, MlpGradients& grads);

// Single-sample convenience wrapper around the batched pass.
Eigen::VectorXd backward(const Mlp& mlp, const MlpCache& cache,
                         const Eigen::VectorXd& upstream, MlpGradients& grads);

// Binary layout "MLP1": layer-size header then row-major float64 parameter
// blocks (see docs/formats.md).
void save_mlp(const Mlp& mlp, std::ostream& out);
Mlp load_mlp(std::istream& in);
void save_mlp_file(const Mlp& mlp, const std::string& path);
Mlp load_mlp_file(const std::string& path);

}  // namespace intmpc
