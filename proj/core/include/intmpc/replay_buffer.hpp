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
#include <cstddef>
#include <vector>

namespace intmpc {

inline constexpr int kObservationDim = 9;
using ObsVector = Eigen::Matrix<double, kObservationDim, 1>;

// One learner record. The action is stored pre-squash; the update and the
// critics recover the squashed value from it.
struct Transition {
  ObsVector observation = ObsVector::Zero();
  double raw_action = 0.0;
  double reward = 0.0;
  ObsVector next_observation = ObsVector::Zero();
  bool done = false;
};

// Fixed-capacity FIFO store; the oldest record is evicted once full.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity) : capacity_(capacity) {}

  void push(const Transition& t) {
    if (data_.size() < capacity_) {
      data_.push_back(t);
    } else {
      data_[head_] = t;
      head_ = (head_ + 1) % capacity_;
    }
  }

  std::size_t size() const { return data_.size(); }
  std::size_t capacity() const { return capacity_; }

  // Insertion order: index 0 is the oldest record still present.
  const Transition& at(std::size_t i) const {
    return data_[(head_ + i) % data_.size()];
  }

 private:
  std::vector<Transition> data_;
  std::size_t head_ = 0;
  std::size_t capacity_;
};

}  // namespace intmpc
