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

#include "intmpc/trace.hpp"

#include <cstdio>

#include "intmpc/errors.hpp"

namespace intmpc {

TraceWriter::TraceWriter(const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "w");
  if (f == nullptr) throw ConfigError("cannot write trace: " + path);
  std::fputs("time,id,x,y,psi,v,a_cmd,leader_id,coop\n", f);
  out_ = f;
}

TraceWriter::~TraceWriter() {
  if (out_ != nullptr) std::fclose(static_cast<FILE*>(out_));
}

void TraceWriter::record(const TrafficWorld& world, const ControlInput& ego_control) {
  FILE* f = static_cast<FILE*>(out_);
  std::fprintf(f, "%.2f,%d,%.6f,%.6f,%.6f,%.6f,%.6f,%d,%.6f\n", world.clock, kEgoId,
               world.ego.x, world.ego.y, world.ego.psi, world.ego.v, ego_control.a,
               -1, 0.0);
  for (const auto& o : world.others) {
    std::fprintf(f, "%.2f,%d,%.6f,%.6f,%.6f,%.6f,%.6f,%d,%.6f\n", world.clock, o.id,
                 o.state.x, o.state.y, o.state.psi, o.state.v, o.a_cmd, o.leader_id,
                 o.coop);
  }
}

std::vector<TraceRecord> read_trace(const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "r");
  if (f == nullptr) throw ConfigError("cannot open trace: " + path);
  std::vector<TraceRecord> records;
  char line[512];
  bool first = true;
  while (std::fgets(line, sizeof(line), f) != nullptr) {
    if (first) {  // header
      first = false;
      continue;
    }
    TraceRecord r;
    if (std::sscanf(line, "%lf,%d,%lf,%lf,%lf,%lf,%lf,%d,%lf", &r.time, &r.id, &r.x,
                    &r.y, &r.psi, &r.v, &r.a_cmd, &r.leader_id, &r.coop) == 9) {
      records.push_back(r);
    }
  }
  std::fclose(f);
  return records;
}

}  // namespace intmpc
