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

#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "drivestack/hdmap.hpp"
#include "drivestack/modes.hpp"
#include "drivestack/vehicle.hpp"
#include "drivestack/worldsim.hpp"

namespace drivestack::odd {

/// Operational-design-domain definition gating one drive mode. The attribute
/// vocabulary is deliberately small: road type, weather, visibility, speed
/// range and construction-zone permission.
struct OddDefinition {
  DriveMode mode = DriveMode::AUTOPILOT;
  std::set<hdmap::RoadType> allowed_road_types{hdmap::RoadType::highway};
  std::set<worldsim::Weather> allowed_weather{worldsim::Weather::clear};
  double min_visibility = 50.0;
  double v_min = 0.0;
  double v_max = 33.0;
  bool construction_zone_permitted = false;
};

struct OddStatus {
  DriveMode mode = DriveMode::AUTOPILOT;
  bool satisfied = true;
  std::vector<std::string> violated_attributes;  // empty iff satisfied
  std::int64_t tick = 0;
};

/// Evaluates one definition against the current conditions. Every attribute
/// is checked independently; violated_attributes lists all failing ones
/// ("road_type", "weather", "visibility", "speed", "construction_zone").
/// Pure function.
OddStatus evaluate(const OddDefinition& def, const worldsim::Environment& env,
                   const hdmap::MapModel& map, const VehicleState& state, bool cz_active,
                   std::int64_t tick = 0);

/// Evaluates every registered definition for the tick.
std::vector<OddStatus> evaluate_all(const std::vector<OddDefinition>& defs,
                                    const worldsim::Environment& env,
                                    const hdmap::MapModel& map, const VehicleState& state,
                                    bool cz_active, std::int64_t tick = 0);

}  // namespace drivestack::odd
