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

#include "intmpc/mlp.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>

#include "intmpc/errors.hpp"

namespace intmpc {

Mlp Mlp::zeros(const std::vector<int>& sizes) {
  if (sizes.size() < 2) throw ShapeMismatch("network needs at least two layer sizes");
  Mlp mlp;
  mlp.sizes = sizes;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    mlp.weights.emplace_back(Eigen::MatrixXd::Zero(sizes[l + 1], sizes[l]));
    mlp.biases.emplace_back(Eigen::VectorXd::Zero(sizes[l + 1]));
  }
  return mlp;
}

Mlp Mlp::random(const std::vector<int>& sizes, Rng& rng) {
  Mlp mlp = zeros(sizes);
  for (int l = 0; l < mlp.layer_count(); ++l) {
    const bool output_layer = l == mlp.layer_count() - 1;
    const double fan_in = static_cast<double>(sizes[static_cast<std::size_t>(l)]);
    const double bound = output_layer ? std::sqrt(1.0 / fan_in) : std::sqrt(6.0 / fan_in);
    auto& w = mlp.weights[static_cast<std::size_t>(l)];
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) {
        w(r, c) = rng.uniform(-bound, bound);
      }
    }
  }
  return mlp;
}

MlpGradients MlpGradients::zeros_like(const Mlp& mlp) {
  MlpGradients g;
  for (int l = 0; l < mlp.layer_count(); ++l) {
    g.weights.emplace_back(
        Eigen::MatrixXd::Zero(mlp.weights[static_cast<std::size_t>(l)].rows(),
                              mlp.weights[static_cast<std::size_t>(l)].cols()));
    g.biases.emplace_back(
        Eigen::VectorXd::Zero(mlp.biases[static_cast<std::size_t>(l)].size()));
  }
  return g;
}

void MlpGradients::set_zero() {
  for (auto& w : weights) w.setZero();
  for (auto& b : biases) b.setZero();
}

Eigen::MatrixXd forward_batch(const Mlp& mlp, const Eigen::MatrixXd& inputs,
                              MlpCache* cache) {
  if (inputs.rows() != mlp.input_size()) {
    throw ShapeMismatch("forward: input has " + std::to_string(inputs.rows()) +
                        " rows, network expects " + std::to_string(mlp.input_size()));
  }
  if (cache != nullptr) {
    cache->act.clear();
    cache->act.push_back(inputs);
  }
  Eigen::MatrixXd x = inputs;
  for (int l = 0; l < mlp.layer_count(); ++l) {
    const auto ls = static_cast<std::size_t>(l);
    x = (mlp.weights[ls] * x).colwise() + mlp.biases[ls];
    if (l + 1 < mlp.layer_count()) {
      x = x.cwiseMax(0.0);  // ReLU on hidden layers
    }
    if (cache != nullptr) cache->act.push_back(x);
  }
  return x;
}

Eigen::VectorXd forward(const Mlp& mlp, const Eigen::VectorXd& input) {
  return forward_batch(mlp, input, nullptr);
}

Eigen::MatrixXd backward_batch(const Mlp& mlp, const MlpCache& cache,
                               const Eigen::MatrixXd& upstream, MlpGradients& grads) {
  const int L = mlp.layer_count();
  if (cache.act.size() != static_cast<std::size_t>(L) + 1) {
    throw ShapeMismatch("backward: cache does not match a recorded forward pass");
  }
  if (upstream.rows() != mlp.output_size() ||
      upstream.cols() != cache.act.back().cols()) {
    throw ShapeMismatch("backward: upstream gradient shape mismatch");
  }
  Eigen::MatrixXd delta = upstream;
  for (int l = L - 1; l >= 0; --l) {
    const auto ls = static_cast<std::size_t>(l);
    if (l < L - 1) {
      // ReLU mask from the recorded post-activation values.
      delta = (cache.act[ls + 1].array() > 0.0).cast<double>() * delta.array();
    }
    grads.weights[ls].noalias() += delta * cache.act[ls].transpose();
    grads.biases[ls] += delta.rowwise().sum();
    delta = mlp.weights[ls].transpose() * delta;
  }
  return delta;  // dL/dinput
}

Eigen::VectorXd backward(const Mlp& mlp, const MlpCache& cache,
                         const Eigen::VectorXd& upstream, MlpGradients& grads) {
  return backward_batch(mlp, cache, upstream, grads);
}

namespace {

void write_u32(std::ostream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint32_t read_u32(std::istream& in) {
  std::uint32_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  return v;
}

}  // namespace

void save_mlp(const Mlp& mlp, std::ostream& out) {
  out.write("MLP1", 4);
  write_u32(out, static_cast<std::uint32_t>(mlp.sizes.size()));
  for (int s : mlp.sizes) write_u32(out, static_cast<std::uint32_t>(s));
  for (int l = 0; l < mlp.layer_count(); ++l) {
    const auto ls = static_cast<std::size_t>(l);
    // Row-major weight block, then the bias block.
    const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> w =
        mlp.weights[ls];
    out.write(reinterpret_cast<const char*>(w.data()),
              static_cast<std::streamsize>(sizeof(double)) * w.size());
    out.write(reinterpret_cast<const char*>(mlp.biases[ls].data()),
              static_cast<std::streamsize>(sizeof(double)) * mlp.biases[ls].size());
  }
}

Mlp load_mlp(std::istream& in) {
  char magic[4] = {};
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != "MLP1") {
    throw ConfigError("not an MLP1 parameter block");
  }
  const std::uint32_t n = read_u32(in);
  if (n < 2 || n > 64) throw ConfigError("corrupt MLP1 header");
  std::vector<int> sizes(n);
  for (auto& s : sizes) s = static_cast<int>(read_u32(in));
  Mlp mlp = Mlp::zeros(sizes);
  for (int l = 0; l < mlp.layer_count(); ++l) {
    const auto ls = static_cast<std::size_t>(l);
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> w(
        mlp.weights[ls].rows(), mlp.weights[ls].cols());
    in.read(reinterpret_cast<char*>(w.data()),
            static_cast<std::streamsize>(sizeof(double)) * w.size());
    mlp.weights[ls] = w;
    in.read(reinterpret_cast<char*>(mlp.biases[ls].data()),
            static_cast<std::streamsize>(sizeof(double)) * mlp.biases[ls].size());
  }
  if (!in) throw ConfigError("truncated MLP1 parameter block");
  return mlp;
}

void save_mlp_file(const Mlp& mlp, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  save_mlp(mlp, out);
}

Mlp load_mlp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingCheckpoint("cannot open " + path);
  return load_mlp(in);
}

}  // namespace intmpc
