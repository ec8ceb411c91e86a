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
#include <string>
#include <vector>

#include "drivestack/modes.hpp"

namespace drivestack::hmi {

enum class HmiMessageKind { mode_changed, warning, takeover_request, takeover_cleared };

std::string to_string(HmiMessageKind k);

struct HmiMessage {
  HmiMessageKind kind = HmiMessageKind::mode_changed;
  std::int64_t tick = 0;
  std::string detail;
};

/// Take-over request as published by the mode manager on /hmi/requests;
/// carries the violated attributes or failure source that triggered it.
struct TakeoverRequest {
  std::int64_t tick = 0;
  std::vector<std::string> reasons;
};

enum class DriverCommandKind { engage, disengage, ack_takeover };

std::string to_string(DriverCommandKind k);

struct DriverCommand {
  DriverCommandKind kind = DriverCommandKind::engage;
  std::int64_t tick = 0;
};

/// Deterministic scripted driver: engages once at engage_at_tick and, when
/// responds_to_takeover, acknowledges exactly ack_delay_ticks after a
/// takeover request is displayed.
struct DriverModel {
  std::optional<std::int64_t> engage_at_tick;
  std::int64_t ack_delay_ticks = 0;
  bool responds_to_takeover = true;
};

/// HMI bookkeeping: renders display messages for mode changes and takeover
/// requests, and drives the simulated driver.
class Hmi {
 public:
  explicit Hmi(DriverModel model) : model_(model) {}

  /// One HmiMessage per mode change and per takeover request/clear.
  std::vector<HmiMessage> render(const std::optional<DriveMode>& mode,
                                 const std::vector<TakeoverRequest>& requests,
                                 std::int64_t tick);

  std::optional<DriverCommand> driver_step(std::int64_t tick);

 private:
  DriverModel model_;
  std::optional<DriveMode> last_mode_;
  bool request_pending_ = false;
  bool ack_armed_ = false;
  std::int64_t ack_due_tick_ = 0;
};

}  // namespace drivestack::hmi
