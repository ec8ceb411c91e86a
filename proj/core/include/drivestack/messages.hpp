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
#include <string>
#include <vector>

#include "drivestack/hmi.hpp"
#include "drivestack/modes.hpp"
#include "drivestack/odd.hpp"
#include "drivestack/perception.hpp"
#include "drivestack/trajectory.hpp"
#include "drivestack/vehicle.hpp"
#include "drivestack/worldsim.hpp"

namespace drivestack::topics {

inline constexpr const char* kWorldTruth = "/world/truth";
inline constexpr const char* kEgoState = "/ego/state";
inline constexpr const char* kPerceptionObjects = "/perception/objects";
inline constexpr const char* kCzEvent = "/perception/cz_event";
inline constexpr const char* kOddStatus = "/odd/status";
inline constexpr const char* kPlanTrajectory = "/plan/trajectory";
inline constexpr const char* kModeActive = "/mode/active";
inline constexpr const char* kControlCmd = "/control/cmd";
inline constexpr const char* kHmiRequests = "/hmi/requests";
inline constexpr const char* kHmiDriver = "/hmi/driver";
inline constexpr const char* kHmiDisplay = "/hmi/display";

inline std::string health(const std::string& node) { return "/health/" + node; }

inline constexpr const char* kReplanService = "plan/replan_now";

}  // namespace drivestack::topics

namespace drivestack::msgs {

/// Ground truth bundle published by the world each tick; the actuation report
/// exposes saturation flags and which command source was applied.
struct ActuationReport {
  double a_applied = 0.0;
  double delta_applied = 0.0;
  bool accel_clamped = false;
  bool steer_clamped = false;
  bool accel_rate_limited = false;
  bool steer_rate_limited = false;
  bool had_command = false;
  CommandSource applied_source = CommandSource::controller;
};

struct WorldTruth {
  VehicleState ego;
  std::vector<worldsim::Obstacle> obstacles;
  worldsim::Environment env;
  ActuationReport actuation;
};

struct DetectedObjectList {
  std::int64_t tick = 0;
  std::vector<perception::DetectedObject> objects;
};

struct OddStatusList {
  std::int64_t tick = 0;
  std::vector<odd::OddStatus> statuses;
};

struct ActiveMode {
  DriveMode mode = DriveMode::MANUAL;
  std::int64_t tick = 0;
};

struct Heartbeat {
  std::string node;
  std::int64_t tick = 0;
  /// False when the node is alive but degraded; the planner reports an
  /// infeasible plan attempt this way.
  bool nominal = true;
};

/// Request payload of the plan/replan_now service; carries the mode the
/// planner should assume, since the /mode/active topic only lands next tick.
struct ReplanRequest {
  DriveMode mode = DriveMode::AUTOPILOT;
  std::int64_t tick = 0;
};

struct ReplanResponse {
  bool accepted = false;
};

// Payload rendering for the trace recorder (one JSON object per message).
// Overloads live in the namespace of their argument type so the bus finds
// them by argument-dependent lookup.
std::string render_payload(const WorldTruth& t);
std::string render_payload(const DetectedObjectList& l);
std::string render_payload(const OddStatusList& l);
std::string render_payload(const ActiveMode& m);
std::string render_payload(const Heartbeat& h);

}  // namespace drivestack::msgs

namespace drivestack {
std::string render_payload(const VehicleState& v);
std::string render_payload(const Trajectory& t);
std::string render_payload(const ControlCommand& c);
}  // namespace drivestack

namespace drivestack::perception {
std::string render_payload(const ConstructionZoneEvent& e);
}  // namespace drivestack::perception

namespace drivestack::hmi {
std::string render_payload(const TakeoverRequest& r);
std::string render_payload(const DriverCommand& d);
std::string render_payload(const HmiMessage& m);
}  // namespace drivestack::hmi
