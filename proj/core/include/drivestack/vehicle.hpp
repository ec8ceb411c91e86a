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

#include <algorithm>
#include <cstdint>
#include <vector>

namespace drivestack {

/// Ground-truth ego state. (x, y) is the rear-axle point; psi is wrapped to
/// (-pi, pi]; v never goes negative (reverse driving is out of scope); t is
/// tick * dt exactly.
struct VehicleState {
  double x = 0.0;
  double y = 0.0;
  double psi = 0.0;
  double v = 0.0;
  double a = 0.0;
  double delta = 0.0;
  double t = 0.0;
};

struct FootprintCircle {
  double offset = 0.0;  // along body x from the rear axle, meters
  double radius = 1.0;
};

struct VehicleParams {
  double wheelbase = 2.9;
  double delta_max = 0.6;
  double a_min = -6.0;
  double a_max = 3.0;
  double steer_rate_max = 0.7;   // rad/s
  double accel_rate_max = 10.0;  // m/s^3 (jerk limit)
  std::vector<FootprintCircle> footprint_circles = {
      {-0.4, 1.0}, {1.45, 1.0}, {3.3, 1.0}};

  /// Longitudinal distance from the rear axle to the footprint's front edge.
  double footprint_reach() const {
    double reach = 0.0;
    for (const auto& c : footprint_circles) reach = std::max(reach, c.offset + c.radius);
    return reach;
  }
};

enum class CommandSource { controller, emergency_override };

/// The control -> actuation contract: acceleration plus steering demand.
struct ControlCommand {
  double a_cmd = 0.0;
  double delta_cmd = 0.0;
  CommandSource source = CommandSource::controller;
  std::int64_t tick = 0;
};

}  // namespace drivestack
