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
#include <stdexcept>

#include "drivestack/trajectory.hpp"
#include "drivestack/vehicle.hpp"

namespace drivestack::control {

class EmptyTrajectoryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
/// Raised when the tracked trajectory is older than the staleness bound;
/// surfaces planner failure to the mode manager.
class StaleTrajectoryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Longitudinal PID with a symmetric anti-windup clamp on the integral.
struct PidState {
  double kp = 1.2;
  double ki = 0.15;
  double kd = 0.0;
  double integral = 0.0;
  double prev_error = 0.0;
  double integral_limit = 1.0;
};

struct PidOutput {
  double a_cmd = 0.0;
  PidState state;
};

/// One PID update: e = v_ref - v_meas; integral <- clamp(integral + e dt);
/// a = kp e + ki integral + kd (e - prev_error) / dt. Pure function.
PidOutput pid_step(const PidState& pid, double v_ref, double v_meas, double dt);

struct StanleyConfig {
  double k_gain = 2.5;  // cross-track gain, 1/s
  double v_eps = 0.5;   // low-speed softening, m/s
  double delta_max = 0.6;
};

/// Stanley steering law evaluated against the nearest trajectory point:
/// delta = clamp(psi_e + atan2(k e_fa, v + v_eps)). The cross-track error is
/// measured at the front axle and is positive when the path lies to the left
/// of it.
double stanley_step(const StanleyConfig& cfg, const TrajectoryPoint& target,
                    const VehicleState& state, double wheelbase);

/// Index of the trajectory point nearest to the given position; exact ties
/// resolve to the lower index.
std::size_t nearest_point_index(const Trajectory& trajectory, double x, double y);

struct ControllerConfig {
  PidState pid;  // gains and anti-windup template; runtime state lives outside
  StanleyConfig stanley;
  double t_look = 0.1;  // lookahead for the speed reference, seconds
  int max_staleness_ticks = 25;
};

struct TrackOutput {
  ControlCommand cmd;
  PidState pid;
};

/// Full tracking step: projects the ego onto the trajectory, picks the speed
/// reference t_look ahead, and composes pid_step and stanley_step. Throws
/// EmptyTrajectoryError / StaleTrajectoryError.
TrackOutput track(const Trajectory& trajectory, std::int64_t current_tick,
                  const VehicleState& state, const PidState& pid, const ControllerConfig& cfg,
                  double wheelbase, double dt);

}  // namespace drivestack::control
