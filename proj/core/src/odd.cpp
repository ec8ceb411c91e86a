// Copyright 2026 The drivestack Authors
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

#include "drivestack/odd.hpp"

namespace drivestack::odd {

OddStatus evaluate(const OddDefinition& def, const worldsim::Environment& env,
                   const hdmap::MapModel& map, const VehicleState& state, bool cz_active,
                   std::int64_t tick) {
  OddStatus status;
  status.mode = def.mode;
  status.tick = tick;

  if (!def.allowed_road_types.contains(map.road_type)) {
    status.violated_attributes.push_back("road_type");
  }
  if (!def.allowed_weather.contains(env.weather)) {
    status.violated_attributes.push_back("weather");
  }
  if (env.visibility < def.min_visibility) {
    status.violated_attributes.push_back("visibility");
  }
  if (state.v < def.v_min || state.v > def.v_max) {
    status.violated_attributes.push_back("speed");
  }
  if (cz_active && !def.construction_zone_permitted) {
    status.violated_attributes.push_back("construction_zone");
  }

  status.satisfied = status.violated_attributes.empty();
  return status;
}

std::vector<OddStatus> evaluate_all(const std::vector<OddDefinition>& defs,
                                    const worldsim::Environment& env,
                                    const hdmap::MapModel& map, const VehicleState& state,
                                    bool cz_active, std::int64_t tick) {
  std::vector<OddStatus> statuses;
  statuses.reserve(defs.size());
  for (const auto& def : defs) {
    statuses.push_back(evaluate(def, env, map, state, cz_active, tick));
  }
  return statuses;
}

}  // namespace drivestack::odd
