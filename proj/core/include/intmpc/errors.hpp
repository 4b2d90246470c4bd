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

#include <stdexcept>
#include <string>

namespace intmpc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fewer than two distinct waypoints were given to build a path.
struct DegeneratePath : Error {
  using Error::Error;
};

// Vector/matrix dimensions do not match the network layout.
struct ShapeMismatch : Error {
  using Error::Error;
};

// A learner update was requested before the buffer held one batch.
struct InsufficientData : Error {
  using Error::Error;
};

// A method requiring a policy checkpoint was run without one.
struct MissingCheckpoint : Error {
  using Error::Error;
};

// A statistical test was given an empty sample.
struct EmptySample : Error {
  using Error::Error;
};

// Malformed configuration or data file.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace intmpc
