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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "drivestack/control.hpp"
#include "drivestack/geometry.hpp"
#include "drivestack/hdmap.hpp"
#include "drivestack/hmi.hpp"
#include "drivestack/mode_manager.hpp"
#include "drivestack/odd.hpp"
#include "drivestack/perception.hpp"
#include "drivestack/planner.hpp"
#include "drivestack/vehicle.hpp"
#include "drivestack/worldsim.hpp"

namespace drivestack::scenario {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string field, const std::string& message)
      : std::runtime_error("invalid scenario field \"" + field + "\": " + message),
        field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct MapSection {
  std::vector<Vec2> waypoints;
  int lane_count = 1;
  double lane_width = 3.5;
  double speed_limit = 25.0;
  hdmap::RoadType road_type = hdmap::RoadType::highway;

  hdmap::MapModel build() const;
};

struct EgoSection {
  VehicleState start;
  VehicleParams params;
};

struct EnvironmentKeyframe {
  double time_s = 0.0;
  worldsim::Environment env;
};

struct LateralOffsetCriterion {
  double s_from = 0.0;
  double max_abs_d = 0.0;
};

/// Pass criteria evaluated on the completed trace. Absent criteria pass
/// vacuously; empty criteria always pass.
struct PassCriteria {
  bool require_no_collision = false;
  std::optional<double> require_route_completion_s;
  std::optional<double> min_obstacle_clearance;
  std::optional<double> max_speed_in_zone;
  std::vector<DriveMode> required_mode_sequence;  // must appear as subsequence
  std::optional<LateralOffsetCriterion> max_final_lateral_offset;
  bool require_final_stopped = false;
};

struct ModeManagerConfig {
  mode_manager::TtcConfig ttc;
  int takeover_timeout_ticks = 200;
  int heartbeat_timeout_ticks = 10;
  double stop_speed_eps = 0.01;
};

/// Per-mode planner profiles: AUTOPILOT follows the global path, CZA runs the
/// Frenet sampler with its own target speed and safety margin.
struct PlannerProfiles {
  planner::PlannerConfig autopilot;
  planner::PlannerConfig cza;
};

struct ScenarioSpec {
  std::string name;
  double duration_s = 0.0;
  std::uint64_t seed = 0;
  MapSection map;
  EgoSection ego;
  std::vector<worldsim::Obstacle> obstacles;
  std::vector<EnvironmentKeyframe> environment;
  hmi::DriverModel driver;
  std::vector<odd::OddDefinition> odd_definitions;
  perception::SensorConfig sensor;
  perception::ZoneConfig zone;
  PlannerProfiles planner;
  control::ControllerConfig control;
  ModeManagerConfig mode_manager;
  PassCriteria pass_criteria;
};

/// Simulation tick length; the whole stack runs on this fixed step.
inline constexpr double kTickSeconds = 0.02;

/// Loads and validates a scenario file (a JSON object tree). Unspecified
/// sections fall back to the documented defaults. Throws ParseError with the
/// offending location or ValidationError naming the violated field.
ScenarioSpec load_scenario(const std::string& path);

/// Same, from an in-memory document; `origin` labels error messages.
ScenarioSpec parse_scenario(const std::string& text, const std::string& origin = "<string>");

}  // namespace drivestack::scenario
