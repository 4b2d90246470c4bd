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

#include <string>
#include <vector>

#include "intmpc/traffic_world.hpp"

namespace intmpc {

// One trace row: a vehicle at a simulation step. The ego uses id 0,
// leader_id -1 for free road and coop 0.
struct TraceRecord {
  double time = 0.0;
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  double psi = 0.0;
  double v = 0.0;
  double a_cmd = 0.0;
  int leader_id = -1;
  double coop = 0.0;
};

// Line-delimited CSV episode trace (docs/formats.md).
class TraceWriter {
 public:
  explicit TraceWriter(const std::string& path);
  ~TraceWriter();
  TraceWriter(const TraceWriter&) = delete;
  TraceWriter& operator=(const TraceWriter&) = delete;

  // Appends one row per vehicle at the current clock.
  void record(const TrafficWorld& world, const ControlInput& ego_control);

 private:
  void* out_;  // FILE*
};

std::vector<TraceRecord> read_trace(const std::string& path);

}  // namespace intmpc
