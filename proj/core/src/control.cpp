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

#include "drivestack/control.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "drivestack/geometry.hpp"

namespace drivestack::control {

PidOutput pid_step(const PidState& pid, double v_ref, double v_meas, double dt) {
  PidOutput out;
  out.state = pid;
  const double error = v_ref - v_meas;
  out.state.integral =
      clamp_symmetric(pid.integral + error * dt, pid.integral_limit);
  out.a_cmd = pid.kp * error + pid.ki * out.state.integral +
              pid.kd * (error - pid.prev_error) / dt;
  out.state.prev_error = error;
  return out;
}

double stanley_step(const StanleyConfig& cfg, const TrajectoryPoint& target,
                    const VehicleState& state, double wheelbase) {
  const double psi_e = wrap_angle(target.psi - state.psi);

  const Vec2 front_axle{state.x + wheelbase * std::cos(state.psi),
                        state.y + wheelbase * std::sin(state.psi)};
  const Vec2 tangent = unit_from_heading(target.psi);
  const Vec2 offset = front_axle - Vec2{target.x, target.y};
  // tangent.cross(offset) > 0 puts the front axle left of the path, i.e. the
  // path lies to the right; e_fa is positive when the path is to the left.
  const double e_fa = -tangent.cross(offset);

  const double delta = psi_e + std::atan2(cfg.k_gain * e_fa, state.v + cfg.v_eps);
  return clamp_symmetric(delta, cfg.delta_max);
}

std::size_t nearest_point_index(const Trajectory& trajectory, double x, double y) {
  std::size_t best = 0;
  double best_sq = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < trajectory.points.size(); ++i) {
    const double dx = trajectory.points[i].x - x;
    const double dy = trajectory.points[i].y - y;
    const double sq = dx * dx + dy * dy;
    if (sq < best_sq) {
      best_sq = sq;
      best = i;
    }
  }
  return best;
}

TrackOutput track(const Trajectory& trajectory, std::int64_t current_tick,
                  const VehicleState& state, const PidState& pid, const ControllerConfig& cfg,
                  double wheelbase, double dt) {
  if (trajectory.empty()) throw EmptyTrajectoryError("cannot track an empty trajectory");
  if (current_tick - trajectory.created_tick > cfg.max_staleness_ticks) {
    throw StaleTrajectoryError("trajectory older than the staleness bound");
  }

  const std::size_t nearest = nearest_point_index(trajectory, state.x, state.y);
  // Speed reference from a lookahead point to avoid derivative kick at
  // replan boundaries.
  const auto lookahead_steps =
      static_cast<std::size_t>(std::llround(cfg.t_look / trajectory.dt));
  const std::size_t ref_index =
      std::min(nearest + lookahead_steps, trajectory.points.size() - 1);

  const auto pid_out = pid_step(pid, trajectory.points[ref_index].v, state.v, dt);
  const double delta = stanley_step(cfg.stanley, trajectory.points[nearest], state, wheelbase);

  TrackOutput out;
  out.cmd = ControlCommand{.a_cmd = pid_out.a_cmd,
                           .delta_cmd = delta,
                           .source = CommandSource::controller,
                           .tick = current_tick};
  out.pid = pid_out.state;
  return out;
}

}  // namespace drivestack::control
