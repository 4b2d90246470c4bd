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

// Internal JSON helpers shared between the config translation units.

#pragma once

#include <nlohmann/json.hpp>

#include "intmpc/scenario.hpp"

namespace intmpc::detail {

void scenario_from_json(const nlohmann::json& j, ScenarioConfig& cfg);
nlohmann::json scenario_to_json(const ScenarioConfig& cfg);

}  // namespace intmpc::detail
