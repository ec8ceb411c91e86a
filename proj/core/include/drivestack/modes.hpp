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

#include <string>

namespace drivestack {

/// Driving modes; exactly one is active per tick.
enum class DriveMode { MANUAL, AUTOPILOT, CZA, TAKEOVER_REQUESTED, EMERGENCY_BRAKE };

std::string to_string(DriveMode m);
DriveMode drive_mode_from_string(const std::string& s);

/// Modes in which the stack is driving the vehicle, including the handover
/// phase where automation continues until the driver acknowledges.
inline bool is_automated(DriveMode m) {
  return m == DriveMode::AUTOPILOT || m == DriveMode::CZA || m == DriveMode::TAKEOVER_REQUESTED;
}

}  // namespace drivestack
