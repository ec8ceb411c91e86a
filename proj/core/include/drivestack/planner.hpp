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
#include <span>
#include <vector>

#include "drivestack/hdmap.hpp"
#include "drivestack/polynomials.hpp"
#include "drivestack/trajectory.hpp"
#include "drivestack/vehicle.hpp"

namespace drivestack::planner {

struct CircleObstacle {
  double x = 0.0;
  double y = 0.0;
  double radius = 0.3;
};

struct PlannerConfig {
  // Cost weights.
  double k_j = 0.1;
  double k_t = 0.1;
  double k_d = 1.0;
  double k_s = 1.0;
  double k_lat = 1.0;
  double k_lon = 1.0;
  // Sampling grids; candidate enumeration order (and therefore tie-breaking
  // grid order) is d_targets outer, then t_horizons, then v_targets.
  std::vector<double> d_targets{-3.0, -2.5, -2.0, -1.5, -1.0, -0.5, 0.0,
                                0.5,  1.0,  1.5,  2.0,  2.5,  3.0};
  std::vector<double> t_horizons{2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0};
  std::vector<double> v_targets{18.0, 20.0, 22.0};
  // Kinematic limits a candidate must satisfy at every point.
  double v_max = 36.0;
  double a_max = 3.0;
  double kappa_max = 0.2;
  double safety_margin = 0.3;
  double target_speed = 20.0;
  double dt_traj = 0.02;
  int replan_period_ticks = 10;
  double route_end_margin = 5.0;

  /// Rewrites v_targets to {ts - 2, ts, ts + 2} clipped to >= 0.
  void set_target_speed(double ts);
};

struct CandidateSpec {
  double d_target = 0.0;
  double horizon = 0.0;
  double v_target = 0.0;
  std::size_t grid_index = 0;
};

struct EvaluatedCandidate {
  CandidateSpec spec;
  double cost = 0.0;
  bool feasible = false;
  Trajectory trajectory;
};

struct PlanResult {
  Trajectory trajectory;
  CandidateSpec chosen;
};

/// True iff any footprint circle placed along the candidate intersects any
/// obstacle circle inflated by margin (strict overlap; touching is free).
bool collision_check(const Trajectory& candidate, std::span<const CircleObstacle> obstacles,
                     std::span<const FootprintCircle> footprint, double margin);

/// Evaluates the full (d_target, horizon, v_target) product in grid order.
/// Lateral motion is a quintic from the current (d, d_dot, d_ddot) to
/// (d_target, 0, 0); longitudinal a velocity-keeping quartic to (v_target, 0).
/// Costs follow the cited Frenet formulation:
///   C_lat = k_j * int d'''(t)^2 + k_t * T + k_d * d_target^2
///   C_lon = k_j * int s'''(t)^2 + k_t * T + k_s * (s_dot(T) - target_speed)^2
///   C     = k_lat * C_lat + k_lon * C_lon
std::vector<EvaluatedCandidate> enumerate_candidates(
    const hdmap::MapModel& map, const hdmap::FrenetPoint& ego,
    std::span<const CircleObstacle> obstacles, std::span<const FootprintCircle> footprint,
    const PlannerConfig& cfg);

/// Returns the minimum-cost feasible candidate, ties broken by smaller
/// |d_target|, then smaller horizon, then grid order. Empty when every
/// candidate is rejected, which signals the mode manager.
std::optional<PlanResult> sample_frenet(const hdmap::MapModel& map,
                                        const hdmap::FrenetPoint& ego,
                                        std::span<const CircleObstacle> obstacles,
                                        std::span<const FootprintCircle> footprint,
                                        const PlannerConfig& cfg);

/// Global-path follower: rides the reference line at d = 0 with a constant
/// acceleration ramp toward min(target_speed, speed limit), decelerating to a
/// stop at the route end. Lateral offset is left to the controller.
Trajectory follow_global(const hdmap::MapModel& map, const VehicleState& ego,
                         const PlannerConfig& cfg);

}  // namespace drivestack::planner
