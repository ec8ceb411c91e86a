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

#include <optional>
#include <string>
#include <vector>

#include "drivestack/geometry.hpp"
#include "drivestack/vehicle.hpp"

namespace drivestack::worldsim {

enum class ObstacleKind { cone, barrier, vehicle_static };

ObstacleKind obstacle_kind_from_string(const std::string& s);
std::string to_string(ObstacleKind k);

struct Obstacle {
  std::string id;
  ObstacleKind kind = ObstacleKind::cone;
  double x = 0.0;
  double y = 0.0;
  double radius = 0.3;
  std::string cz_group;  // optional construction-zone tag
  // Scripted constant-velocity mover; zero for static obstacles.
  double vx = 0.0;
  double vy = 0.0;
};

enum class Weather { clear, rain_light, rain_heavy };

Weather weather_from_string(const std::string& s);
std::string to_string(Weather w);

struct Environment {
  Weather weather = Weather::clear;
  double visibility = 1000.0;  // meters
};

/// Actuation-stage result: saturation is silent but the flags end up in the
/// trace via the world truth message.
struct AppliedCommand {
  double a = 0.0;
  double delta = 0.0;
  bool accel_clamped = false;
  bool steer_clamped = false;
  bool accel_rate_limited = false;
  bool steer_rate_limited = false;
};

/// Clamps the command to the actuator envelopes, then rate-limits against the
/// previously applied values by accel_rate_max*dt and steer_rate_max*dt.
AppliedCommand apply_command(const VehicleParams& params, double prev_a, double prev_delta,
                             const ControlCommand& cmd, double dt);

/// Kinematic bicycle, semi-implicit Euler:
///   v+   = max(0, v + a dt)
///   psi+ = wrap(psi + (v+ / L) tan(delta) dt)
///   x+   = x + v+ cos(psi+) dt
///   y+   = y + v+ sin(psi+) dt
/// The caller owns the time bookkeeping (state.t is not advanced here).
VehicleState step(const VehicleState& state, const VehicleParams& params, double a_applied,
                  double delta_applied, double dt);

/// Ground truth as published on /world/truth each tick.
struct World {
  VehicleState state;
  VehicleParams params;
  std::vector<Obstacle> obstacles;
  Environment env;
};

}  // namespace drivestack::worldsim
