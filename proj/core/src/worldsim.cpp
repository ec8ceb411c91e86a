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

#include "drivestack/worldsim.hpp"

#include <cmath>
#include <stdexcept>

namespace drivestack::worldsim {

ObstacleKind obstacle_kind_from_string(const std::string& s) {
  if (s == "cone") return ObstacleKind::cone;
  if (s == "barrier") return ObstacleKind::barrier;
  if (s == "vehicle_static") return ObstacleKind::vehicle_static;
  throw std::invalid_argument("unknown obstacle kind: " + s);
}

std::string to_string(ObstacleKind k) {
  switch (k) {
    case ObstacleKind::cone: return "cone";
    case ObstacleKind::barrier: return "barrier";
    case ObstacleKind::vehicle_static: return "vehicle_static";
  }
  return "cone";
}

Weather weather_from_string(const std::string& s) {
  if (s == "clear") return Weather::clear;
  if (s == "rain_light") return Weather::rain_light;
  if (s == "rain_heavy") return Weather::rain_heavy;
  throw std::invalid_argument("unknown weather: " + s);
}

std::string to_string(Weather w) {
  switch (w) {
    case Weather::clear: return "clear";
    case Weather::rain_light: return "rain_light";
    case Weather::rain_heavy: return "rain_heavy";
  }
  return "clear";
}

AppliedCommand apply_command(const VehicleParams& params, double prev_a, double prev_delta,
                             const ControlCommand& cmd, double dt) {
  AppliedCommand out;

  double a_target = cmd.a_cmd;
  if (a_target > params.a_max) {
    a_target = params.a_max;
    out.accel_clamped = true;
  } else if (a_target < params.a_min) {
    a_target = params.a_min;
    out.accel_clamped = true;
  }
  const double max_da = params.accel_rate_max * dt;
  double da = a_target - prev_a;
  if (da > max_da) {
    da = max_da;
    out.accel_rate_limited = true;
  } else if (da < -max_da) {
    da = -max_da;
    out.accel_rate_limited = true;
  }
  out.a = prev_a + da;

  double delta_target = cmd.delta_cmd;
  if (delta_target > params.delta_max) {
    delta_target = params.delta_max;
    out.steer_clamped = true;
  } else if (delta_target < -params.delta_max) {
    delta_target = -params.delta_max;
    out.steer_clamped = true;
  }
  const double max_dd = params.steer_rate_max * dt;
  double dd = delta_target - prev_delta;
  if (dd > max_dd) {
    dd = max_dd;
    out.steer_rate_limited = true;
  } else if (dd < -max_dd) {
    dd = -max_dd;
    out.steer_rate_limited = true;
  }
  out.delta = prev_delta + dd;

  return out;
}

VehicleState step(const VehicleState& state, const VehicleParams& params, double a_applied,
                  double delta_applied, double dt) {
  VehicleState next = state;
  next.a = a_applied;
  next.delta = delta_applied;
  next.v = std::max(0.0, state.v + a_applied * dt);
  next.psi = wrap_angle(state.psi + (next.v / params.wheelbase) * std::tan(delta_applied) * dt);
  next.x = state.x + next.v * std::cos(next.psi) * dt;
  next.y = state.y + next.v * std::sin(next.psi) * dt;
  return next;
}

}  // namespace drivestack::worldsim
