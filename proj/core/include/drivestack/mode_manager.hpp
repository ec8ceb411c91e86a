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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "drivestack/modes.hpp"
#include "drivestack/perception.hpp"
#include "drivestack/vehicle.hpp"

namespace drivestack::mode_manager {

enum class EventKind {
  // Listed in descending transition priority; when several events arrive in
  // one tick they are applied in this order, safety first.
  ttc_critical,
  module_unhealthy,
  planner_infeasible,
  odd_violated,
  odd_restored,
  takeover_timeout,
  vehicle_stopped,
  cz_entered,
  cz_cleared,
  driver_engage,
  driver_disengage,
  driver_ack_takeover,
};

std::string to_string(EventKind k);

struct ModeEvent {
  EventKind kind = EventKind::driver_engage;
  std::int64_t tick = 0;
  DriveMode mode = DriveMode::AUTOPILOT;  // for odd_violated / odd_restored
  std::string source;                     // for module_unhealthy
  std::vector<std::string> details;       // violated attributes etc.
};

/// Event priority rank; lower applies first within a tick.
int event_priority(EventKind k);

/// Latest per-mode ODD verdicts and the flags the transition table consults.
struct TransitionContext {
  bool odd_autopilot_satisfied = false;
  bool odd_cza_satisfied = false;
  bool vehicle_stopped = false;
  /// Driver acknowledged the takeover while emergency braking was active.
  bool driver_acked = false;

  bool odd_satisfied(DriveMode m) const {
    if (m == DriveMode::AUTOPILOT) return odd_autopilot_satisfied;
    if (m == DriveMode::CZA) return odd_cza_satisfied;
    return true;
  }
};

/// Pure transition function; total over (state, event, ctx). Unlisted pairs
/// keep the current mode. EMERGENCY_BRAKE is absorbing except through
/// vehicle_stopped with a driver acknowledgement.
DriveMode transition(DriveMode current, const ModeEvent& event, const TransitionContext& ctx);

struct TtcConfig {
  double threshold = 1.5;  // seconds
  double v_eps = 0.1;      // guards the division at near-standstill
};

/// Emits ttc_critical when an object within half a lane of the ego's lateral
/// offset and ahead in s closes in under the threshold:
/// TTC = (s_obj - s_ego - footprint reach) / max(v, eps).
std::optional<ModeEvent> check_ttc(const hdmap::FrenetPoint& ego_frenet, double ego_v,
                                   const std::vector<perception::DetectedObject>& objects,
                                   double lane_width, double footprint_reach,
                                   const TtcConfig& cfg, std::int64_t tick);

/// Full-braking override published directly to actuation, bypassing the
/// planner and controller.
ControlCommand emergency_command(const VehicleParams& params, std::int64_t tick);

struct HealthRecord {
  std::string node;
  std::int64_t last_heartbeat_tick = 0;
  bool degraded = false;
};

/// Tracks node heartbeats; a node missing heartbeats for more than
/// heartbeat_timeout_ticks goes degraded, emitting one module_unhealthy event
/// per transition into degraded.
class HealthMonitor {
 public:
  HealthMonitor(std::vector<std::string> nodes, int heartbeat_timeout_ticks);

  void record_heartbeat(const std::string& node, std::int64_t tick);
  std::vector<ModeEvent> update(std::int64_t tick);
  const std::vector<HealthRecord>& records() const { return records_; }

 private:
  std::vector<HealthRecord> records_;
  int timeout_ticks_;
};

}  // namespace drivestack::mode_manager
