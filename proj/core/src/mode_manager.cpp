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

#include "drivestack/mode_manager.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace drivestack {

std::string to_string(DriveMode m) {
  switch (m) {
    case DriveMode::MANUAL: return "MANUAL";
    case DriveMode::AUTOPILOT: return "AUTOPILOT";
    case DriveMode::CZA: return "CZA";
    case DriveMode::TAKEOVER_REQUESTED: return "TAKEOVER_REQUESTED";
    case DriveMode::EMERGENCY_BRAKE: return "EMERGENCY_BRAKE";
  }
  return "MANUAL";
}

DriveMode drive_mode_from_string(const std::string& s) {
  if (s == "MANUAL") return DriveMode::MANUAL;
  if (s == "AUTOPILOT") return DriveMode::AUTOPILOT;
  if (s == "CZA") return DriveMode::CZA;
  if (s == "TAKEOVER_REQUESTED") return DriveMode::TAKEOVER_REQUESTED;
  if (s == "EMERGENCY_BRAKE") return DriveMode::EMERGENCY_BRAKE;
  throw std::invalid_argument("unknown drive mode: " + s);
}

}  // namespace drivestack

namespace drivestack::mode_manager {

std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::ttc_critical: return "ttc_critical";
    case EventKind::module_unhealthy: return "module_unhealthy";
    case EventKind::planner_infeasible: return "planner_infeasible";
    case EventKind::odd_violated: return "odd_violated";
    case EventKind::odd_restored: return "odd_restored";
    case EventKind::takeover_timeout: return "takeover_timeout";
    case EventKind::vehicle_stopped: return "vehicle_stopped";
    case EventKind::cz_entered: return "cz_entered";
    case EventKind::cz_cleared: return "cz_cleared";
    case EventKind::driver_engage: return "driver_engage";
    case EventKind::driver_disengage: return "driver_disengage";
    case EventKind::driver_ack_takeover: return "driver_ack_takeover";
  }
  return "unknown";
}

int event_priority(EventKind k) { return static_cast<int>(k); }

DriveMode transition(DriveMode current, const ModeEvent& event, const TransitionContext& ctx) {
  switch (event.kind) {
    case EventKind::driver_engage:
      if (current == DriveMode::MANUAL && ctx.odd_satisfied(DriveMode::AUTOPILOT)) {
        return DriveMode::AUTOPILOT;
      }
      return current;

    case EventKind::driver_disengage:
      if (is_automated(current)) return DriveMode::MANUAL;
      return current;

    case EventKind::driver_ack_takeover:
      if (current == DriveMode::TAKEOVER_REQUESTED) return DriveMode::MANUAL;
      if (current == DriveMode::EMERGENCY_BRAKE && ctx.vehicle_stopped) return DriveMode::MANUAL;
      return current;

    case EventKind::cz_entered:
      if (current == DriveMode::AUTOPILOT) {
        return ctx.odd_satisfied(DriveMode::CZA) ? DriveMode::CZA
                                                 : DriveMode::TAKEOVER_REQUESTED;
      }
      return current;

    case EventKind::cz_cleared:
      if (current == DriveMode::CZA && ctx.odd_satisfied(DriveMode::AUTOPILOT)) {
        return DriveMode::AUTOPILOT;
      }
      return current;

    case EventKind::odd_violated:
      if ((current == DriveMode::AUTOPILOT || current == DriveMode::CZA) &&
          event.mode == current) {
        return DriveMode::TAKEOVER_REQUESTED;
      }
      return current;

    case EventKind::odd_restored:
      return current;

    case EventKind::module_unhealthy:
    case EventKind::planner_infeasible:
      if (current == DriveMode::AUTOPILOT || current == DriveMode::CZA) {
        return DriveMode::TAKEOVER_REQUESTED;
      }
      return current;

    case EventKind::ttc_critical:
      if (is_automated(current)) return DriveMode::EMERGENCY_BRAKE;
      return current;

    case EventKind::takeover_timeout:
      if (current == DriveMode::TAKEOVER_REQUESTED) return DriveMode::EMERGENCY_BRAKE;
      return current;

    case EventKind::vehicle_stopped:
      if (current == DriveMode::EMERGENCY_BRAKE && ctx.driver_acked) return DriveMode::MANUAL;
      return current;
  }
  return current;
}

std::optional<ModeEvent> check_ttc(const hdmap::FrenetPoint& ego_frenet, double ego_v,
                                   const std::vector<perception::DetectedObject>& objects,
                                   double lane_width, double footprint_reach,
                                   const TtcConfig& cfg, std::int64_t tick) {
  const double half_lane = 0.5 * lane_width;
  double min_ttc = std::numeric_limits<double>::infinity();
  std::string worst_id;
  for (const auto& obj : objects) {
    if (obj.s <= ego_frenet.s) continue;
    if (std::abs(obj.d - ego_frenet.d) >= half_lane) continue;
    const double gap = obj.s - ego_frenet.s - footprint_reach;
    const double ttc = gap / std::max(ego_v, cfg.v_eps);
    if (ttc < min_ttc) {
      min_ttc = ttc;
      worst_id = obj.id;
    }
  }
  if (min_ttc < cfg.threshold) {
    ModeEvent ev;
    ev.kind = EventKind::ttc_critical;
    ev.tick = tick;
    ev.details = {worst_id};
    return ev;
  }
  return std::nullopt;
}

ControlCommand emergency_command(const VehicleParams& params, std::int64_t tick) {
  return ControlCommand{.a_cmd = params.a_min,
                        .delta_cmd = 0.0,
                        .source = CommandSource::emergency_override,
                        .tick = tick};
}

HealthMonitor::HealthMonitor(std::vector<std::string> nodes, int heartbeat_timeout_ticks)
    : timeout_ticks_(heartbeat_timeout_ticks) {
  records_.reserve(nodes.size());
  for (auto& node : nodes) {
    records_.push_back(HealthRecord{.node = std::move(node), .last_heartbeat_tick = 0,
                                    .degraded = false});
  }
}

void HealthMonitor::record_heartbeat(const std::string& node, std::int64_t tick) {
  for (auto& rec : records_) {
    if (rec.node == node) {
      rec.last_heartbeat_tick = std::max(rec.last_heartbeat_tick, tick);
      return;
    }
  }
}

std::vector<ModeEvent> HealthMonitor::update(std::int64_t tick) {
  std::vector<ModeEvent> events;
  for (auto& rec : records_) {
    const bool degraded = tick - rec.last_heartbeat_tick > timeout_ticks_;
    if (degraded && !rec.degraded) {
      ModeEvent ev;
      ev.kind = EventKind::module_unhealthy;
      ev.tick = tick;
      ev.source = rec.node;
      events.push_back(std::move(ev));
    }
    rec.degraded = degraded;
  }
  return events;
}

}  // namespace drivestack::mode_manager
