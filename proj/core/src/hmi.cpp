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

#include "drivestack/hmi.hpp"

namespace drivestack::hmi {

std::string to_string(HmiMessageKind k) {
  switch (k) {
    case HmiMessageKind::mode_changed: return "mode_changed";
    case HmiMessageKind::warning: return "warning";
    case HmiMessageKind::takeover_request: return "takeover_request";
    case HmiMessageKind::takeover_cleared: return "takeover_cleared";
  }
  return "warning";
}

std::string to_string(DriverCommandKind k) {
  switch (k) {
    case DriverCommandKind::engage: return "engage";
    case DriverCommandKind::disengage: return "disengage";
    case DriverCommandKind::ack_takeover: return "ack_takeover";
  }
  return "engage";
}

std::vector<HmiMessage> Hmi::render(const std::optional<DriveMode>& mode,
                                    const std::vector<TakeoverRequest>& requests,
                                    std::int64_t tick) {
  std::vector<HmiMessage> out;

  for (const auto& req : requests) {
    std::string detail = "takeover requested";
    for (const auto& reason : req.reasons) detail += " " + reason;
    out.push_back(HmiMessage{HmiMessageKind::takeover_request, tick, detail});
    request_pending_ = true;
    if (model_.responds_to_takeover && !ack_armed_) {
      ack_armed_ = true;
      ack_due_tick_ = tick + model_.ack_delay_ticks;
    }
  }

  if (mode.has_value() && mode != last_mode_) {
    if (last_mode_.has_value()) {
      out.push_back(HmiMessage{HmiMessageKind::mode_changed, tick,
                               to_string(*last_mode_) + " -> " + to_string(*mode)});
      if (*mode == DriveMode::EMERGENCY_BRAKE) {
        out.push_back(HmiMessage{HmiMessageKind::warning, tick, "emergency braking engaged"});
      }
      if (request_pending_ && *mode == DriveMode::MANUAL) {
        out.push_back(HmiMessage{HmiMessageKind::takeover_cleared, tick, "driver in control"});
        request_pending_ = false;
      }
      if (request_pending_ && *mode == DriveMode::EMERGENCY_BRAKE) {
        // The emergency stop is the pairing outcome; no cleared message.
        request_pending_ = false;
      }
    }
    last_mode_ = mode;
  }
  return out;
}

std::optional<DriverCommand> Hmi::driver_step(std::int64_t tick) {
  if (model_.engage_at_tick.has_value() && tick == *model_.engage_at_tick) {
    return DriverCommand{DriverCommandKind::engage, tick};
  }
  if (ack_armed_ && tick >= ack_due_tick_) {
    ack_armed_ = false;
    return DriverCommand{DriverCommandKind::ack_takeover, tick};
  }
  return std::nullopt;
}

}  // namespace drivestack::hmi
