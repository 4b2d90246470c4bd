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

namespace intmpc {

struct Series {
  std::string name;
  std::vector<double> values;
};

// Small deterministic SVG chart emitters for the CSV artifacts.
void svg_bar_chart(const std::string& title, const std::vector<std::string>& categories,
                   const std::vector<Series>& series, const std::string& path);

void svg_line_chart(const std::string& title, const std::vector<double>& x,
                    const std::vector<Series>& series, const std::string& path);

}  // namespace intmpc
