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

#include <doctest.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>

#include "drivestack/mode_manager.hpp"

using namespace drivestack;
using namespace drivestack::mode_manager;

using Tick = std::int64_t;

namespace {

constexpr std::array<DriveMode, 5> kModes = {DriveMode::MANUAL, DriveMode::AUTOPILOT,
                                             DriveMode::CZA, DriveMode::TAKEOVER_REQUESTED,
                                             DriveMode::EMERGENCY_BRAKE};

// The thirteen event instances enumerated by the exhaustion check: every
// kind once, with odd_violated instantiated for both the active mode and a
// non-active mode.
struct EventInstance {
  EventKind kind;
  bool odd_mode_is_active = false;
};

constexpr std::array<EventInstance, 13> kEventInstances = {{
    {EventKind::ttc_critical},
    {EventKind::module_unhealthy},
    {EventKind::planner_infeasible},
    {EventKind::odd_violated, true},
    {EventKind::odd_violated, false},
    {EventKind::odd_restored},
    {EventKind::takeover_timeout},
    {EventKind::vehicle_stopped},
    {EventKind::cz_entered},
    {EventKind::cz_cleared},
    {EventKind::driver_engage},
    {EventKind::driver_disengage},
    {EventKind::driver_ack_takeover},
}};

// Independent statement of the specified transition table, written as
// literal rules rather than sharing any code with the implementation.
DriveMode expected_transition(DriveMode current, const EventInstance& instance,
                              const TransitionContext& ctx, DriveMode event_mode) {
  const bool automated = current == DriveMode::AUTOPILOT || current == DriveMode::CZA ||
                         current == DriveMode::TAKEOVER_REQUESTED;
  switch (instance.kind) {
    case EventKind::driver_engage:
      if (current == DriveMode::MANUAL && ctx.odd_autopilot_satisfied) return DriveMode::AUTOPILOT;
      return current;
    case EventKind::cz_entered:
      if (current == DriveMode::AUTOPILOT && ctx.odd_cza_satisfied) return DriveMode::CZA;
      if (current == DriveMode::AUTOPILOT) return DriveMode::TAKEOVER_REQUESTED;
      return current;
    case EventKind::cz_cleared:
      if (current == DriveMode::CZA && ctx.odd_autopilot_satisfied) return DriveMode::AUTOPILOT;
      return current;
    case EventKind::odd_violated:
      if ((current == DriveMode::AUTOPILOT || current == DriveMode::CZA) &&
          event_mode == current) {
        return DriveMode::TAKEOVER_REQUESTED;
      }
      return current;
    case EventKind::module_unhealthy:
    case EventKind::planner_infeasible:
      if (current == DriveMode::AUTOPILOT || current == DriveMode::CZA) {
        return DriveMode::TAKEOVER_REQUESTED;
      }
      return current;
    case EventKind::ttc_critical:
      if (automated) return DriveMode::EMERGENCY_BRAKE;
      return current;
    case EventKind::driver_ack_takeover:
      if (current == DriveMode::TAKEOVER_REQUESTED) return DriveMode::MANUAL;
      if (current == DriveMode::EMERGENCY_BRAKE && ctx.vehicle_stopped) return DriveMode::MANUAL;
      return current;
    case EventKind::takeover_timeout:
      if (current == DriveMode::TAKEOVER_REQUESTED) return DriveMode::EMERGENCY_BRAKE;
      return current;
    case EventKind::vehicle_stopped:
      if (current == DriveMode::EMERGENCY_BRAKE && ctx.driver_acked) return DriveMode::MANUAL;
      return current;
    case EventKind::driver_disengage:
      if (automated) return DriveMode::MANUAL;
      return current;
    case EventKind::odd_restored:
      return current;
  }
  return current;
}

}  // namespace

TEST_CASE("transition matches the table for every state x event instance x context") {
  int checked = 0;
  for (DriveMode state : kModes) {
    for (const auto& instance : kEventInstances) {
      for (int mask = 0; mask < 16; ++mask) {
        TransitionContext ctx;
        ctx.odd_autopilot_satisfied = mask & 1;
        ctx.odd_cza_satisfied = mask & 2;
        ctx.vehicle_stopped = mask & 4;
        ctx.driver_acked = mask & 8;

        DriveMode event_mode;
        if (instance.kind == EventKind::odd_violated) {
          if (instance.odd_mode_is_active) {
            event_mode = state;
          } else {
            event_mode = state == DriveMode::CZA ? DriveMode::AUTOPILOT : DriveMode::CZA;
          }
        } else {
          event_mode = DriveMode::AUTOPILOT;
        }

        ModeEvent ev;
        ev.kind = instance.kind;
        ev.mode = event_mode;
        const DriveMode got = transition(state, ev, ctx);
        const DriveMode want = expected_transition(state, instance, ctx, event_mode);
        CHECK(got == want);
        ++checked;
      }
    }
  }
  CHECK(checked == 5 * 13 * 16);
}

TEST_CASE("EMERGENCY_BRAKE is absorbing except stopped + acknowledged") {
  std::mt19937_64 rng(31415);
  std::uniform_int_distribution<int> kind_pick(0, 11);
  std::uniform_int_distribution<int> mode_pick(0, 4);
  std::uniform_int_distribution<int> coin(0, 1);

  for (int trial = 0; trial < 10000; ++trial) {
    DriveMode mode = DriveMode::EMERGENCY_BRAKE;
    for (int step = 0; step < 20; ++step) {
      ModeEvent ev;
      ev.kind = static_cast<EventKind>(kind_pick(rng));
      ev.mode = kModes[mode_pick(rng)];
      TransitionContext ctx;
      ctx.odd_autopilot_satisfied = coin(rng);
      ctx.odd_cza_satisfied = coin(rng);
      ctx.vehicle_stopped = coin(rng);
      ctx.driver_acked = coin(rng);

      const DriveMode next = transition(mode, ev, ctx);
      if (mode == DriveMode::EMERGENCY_BRAKE && next != DriveMode::EMERGENCY_BRAKE) {
        const bool legal_exit =
            (ev.kind == EventKind::vehicle_stopped && ctx.driver_acked) ||
            (ev.kind == EventKind::driver_ack_takeover && ctx.vehicle_stopped);
        CHECK(legal_exit);
        CHECK(next == DriveMode::MANUAL);
      }
      mode = next;
    }
  }
}

TEST_CASE("transition is total: every state x kind pair returns a mode") {
  for (DriveMode state : kModes) {
    for (int k = 0; k <= static_cast<int>(EventKind::driver_ack_takeover); ++k) {
      ModeEvent ev;
      ev.kind = static_cast<EventKind>(k);
      TransitionContext ctx;
      const DriveMode next = transition(state, ev, ctx);
      const bool valid = std::find(kModes.begin(), kModes.end(), next) != kModes.end();
      CHECK(valid);
    }
  }
}

TEST_CASE("event priority: safety events precede driver events") {
  CHECK(event_priority(EventKind::ttc_critical) < event_priority(EventKind::module_unhealthy));
  CHECK(event_priority(EventKind::module_unhealthy) < event_priority(EventKind::odd_violated));
  CHECK(event_priority(EventKind::odd_violated) < event_priority(EventKind::takeover_timeout));
  CHECK(event_priority(EventKind::takeover_timeout) < event_priority(EventKind::cz_entered));
  CHECK(event_priority(EventKind::cz_entered) < event_priority(EventKind::driver_engage));
}

TEST_CASE("check_ttc: thresholds, footprint reach and the lane band") {
  TtcConfig cfg;  // threshold 1.5 s
  hdmap::FrenetPoint ego;
  ego.s = 0.0;
  ego.d = 0.0;
  const double reach = 4.3;

  perception::DetectedObject obj;
  obj.id = "wall";
  obj.d = 0.0;

  // 20 m gap at 10 m/s: TTC 2.0, no event.
  obj.s = 20.0 + reach;
  CHECK_FALSE(check_ttc(ego, 10.0, {obj}, 3.5, reach, cfg, 0).has_value());

  // 10 m gap: TTC 1.0, event.
  obj.s = 10.0 + reach;
  const auto ev = check_ttc(ego, 10.0, {obj}, 3.5, reach, cfg, 7);
  REQUIRE(ev.has_value());
  CHECK(ev->kind == EventKind::ttc_critical);
  CHECK(ev->tick == 7);

  // Adjacent lane: |dd| >= half the lane width is ignored.
  obj.d = 3.5;
  CHECK_FALSE(check_ttc(ego, 10.0, {obj}, 3.5, reach, cfg, 0).has_value());
  obj.d = 1.75;  // exactly on the band edge: still ignored
  CHECK_FALSE(check_ttc(ego, 10.0, {obj}, 3.5, reach, cfg, 0).has_value());

  // Behind the ego: ignored.
  obj.d = 0.0;
  obj.s = -5.0;
  CHECK_FALSE(check_ttc(ego, 10.0, {obj}, 3.5, reach, cfg, 0).has_value());
}

TEST_CASE("emergency_command brakes fully with centered steering") {
  VehicleParams params;
  params.a_min = -6.0;
  const auto cmd = emergency_command(params, 12);
  CHECK(cmd.a_cmd == doctest::Approx(-6.0));
  CHECK(cmd.delta_cmd == 0.0);
  CHECK(cmd.source == CommandSource::emergency_override);
  CHECK(cmd.tick == 12);
}

TEST_CASE("health monitor: silence beyond the timeout emits one event per lapse") {
  HealthMonitor monitor({"planner", "control"}, 10);

  // Heartbeats every tick: quiet.
  for (Tick tick = 0; tick <= 20; ++tick) {
    monitor.record_heartbeat("planner", tick);
    monitor.record_heartbeat("control", tick);
    CHECK(monitor.update(tick).empty());
  }

  // Planner silent for 11 ticks: exactly one event when the timeout trips.
  int events = 0;
  for (Tick tick = 21; tick <= 35; ++tick) {
    monitor.record_heartbeat("control", tick);
    for (const auto& ev : monitor.update(tick)) {
      CHECK(ev.kind == EventKind::module_unhealthy);
      CHECK(ev.source == "planner");
      ++events;
    }
  }
  CHECK(events == 1);

  // Recovery and a second failure: a second event.
  for (Tick tick = 36; tick <= 40; ++tick) {
    monitor.record_heartbeat("planner", tick);
    monitor.record_heartbeat("control", tick);
    CHECK(monitor.update(tick).empty());
  }
  for (Tick tick = 41; tick <= 60; ++tick) {
    monitor.record_heartbeat("control", tick);
    for (const auto& ev : monitor.update(tick)) {
      CHECK(ev.source == "planner");
      ++events;
    }
  }
  CHECK(events == 2);
}

