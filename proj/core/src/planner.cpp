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

#include "drivestack/planner.hpp"

#include <algorithm>
#include <cmath>

namespace drivestack::planner {

namespace {

constexpr double kLimitEps = 1e-9;

/// Heading/curvature recovery and limit checks shared by candidate paths.
void finalize_kappa(Trajectory& traj) {
  auto& pts = traj.points;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double ds = std::hypot(pts[i + 1].x - pts[i].x, pts[i + 1].y - pts[i].y);
    pts[i].kappa = ds < 1e-9 ? (i > 0 ? pts[i - 1].kappa : 0.0)
                             : wrap_angle(pts[i + 1].psi - pts[i].psi) / ds;
  }
  if (pts.size() >= 2) pts.back().kappa = pts[pts.size() - 2].kappa;
}

bool within_limits(const Trajectory& traj, const hdmap::MapModel& map, const PlannerConfig& cfg) {
  for (const auto& p : traj.points) {
    if (p.v > cfg.v_max + kLimitEps) return false;
    if (std::abs(p.a) > cfg.a_max + kLimitEps) return false;
    if (std::abs(p.kappa) > cfg.kappa_max + kLimitEps) return false;
    if (p.s < -kLimitEps || p.s > map.reference_line.length() + kLimitEps) return false;
    const auto bounds = hdmap::corridor_bounds(map, std::clamp(p.s, 0.0, map.reference_line.length()));
    if (p.d < bounds.d_min - kLimitEps || p.d > bounds.d_max + kLimitEps) return false;
  }
  return true;
}

}  // namespace

void PlannerConfig::set_target_speed(double ts) {
  target_speed = ts;
  v_targets.clear();
  for (double offset : {-2.0, 0.0, 2.0}) {
    v_targets.push_back(std::max(0.0, ts + offset));
  }
}

bool collision_check(const Trajectory& candidate, std::span<const CircleObstacle> obstacles,
                     std::span<const FootprintCircle> footprint, double margin) {
  for (const auto& p : candidate.points) {
    const double cos_psi = std::cos(p.psi);
    const double sin_psi = std::sin(p.psi);
    for (const auto& circle : footprint) {
      const double cx = p.x + circle.offset * cos_psi;
      const double cy = p.y + circle.offset * sin_psi;
      for (const auto& obs : obstacles) {
        const double limit = circle.radius + obs.radius + margin;
        const double dx = cx - obs.x;
        const double dy = cy - obs.y;
        if (dx * dx + dy * dy < limit * limit) return true;
      }
    }
  }
  return false;
}

std::vector<EvaluatedCandidate> enumerate_candidates(
    const hdmap::MapModel& map, const hdmap::FrenetPoint& ego,
    std::span<const CircleObstacle> obstacles, std::span<const FootprintCircle> footprint,
    const PlannerConfig& cfg) {
  std::vector<EvaluatedCandidate> out;
  const auto corridor = hdmap::corridor_bounds(map, std::clamp(ego.s, 0.0, map.reference_line.length()));

  std::size_t grid_index = 0;
  for (double d_target : cfg.d_targets) {
    // Targets outside the corridor are unreachable by construction.
    if (d_target < corridor.d_min || d_target > corridor.d_max) continue;
    for (double horizon : cfg.t_horizons) {
      const auto lateral =
          solve_quintic(ego.d, ego.d_dot, ego.d_ddot, d_target, 0.0, 0.0, horizon);
      for (double v_target : cfg.v_targets) {
        const auto longitudinal =
            solve_quartic(ego.s, ego.s_dot, ego.s_ddot, v_target, 0.0, horizon);

        EvaluatedCandidate cand;
        cand.spec = CandidateSpec{d_target, horizon, v_target, grid_index++};

        Trajectory traj;
        traj.dt = cfg.dt_traj;
        traj.planner_id = "frenet_sampler";
        const auto n = static_cast<std::size_t>(std::llround(horizon / cfg.dt_traj)) + 1;
        traj.points.reserve(n);
        bool convertible = true;
        for (std::size_t i = 0; i < n; ++i) {
          const double t = static_cast<double>(i) * cfg.dt_traj;
          TrajectoryPoint p;
          p.t_rel = t;
          p.s = longitudinal.position(t);
          p.d = lateral.position(t);
          const double s_dot = longitudinal.velocity(t);
          const double d_dot = lateral.velocity(t);
          const double s_ddot = longitudinal.acceleration(t);
          const double d_ddot = lateral.acceleration(t);
          if (p.s < 0.0 || p.s > map.reference_line.length()) {
            convertible = false;
            break;
          }
          const auto pose = hdmap::frenet_to_cartesian(map, {.s = p.s, .d = p.d});
          p.x = pose.position.x;
          p.y = pose.position.y;
          p.psi = wrap_angle(pose.heading + std::atan2(d_dot, s_dot));
          p.v = std::hypot(s_dot, d_dot);
          p.a = (s_dot * s_ddot + d_dot * d_ddot) / std::max(p.v, 1e-6);
          traj.points.push_back(p);
        }

        if (!convertible) {
          cand.feasible = false;
          cand.cost = 0.0;
          out.push_back(std::move(cand));
          continue;
        }
        finalize_kappa(traj);

        const double dv = longitudinal.velocity(horizon) - cfg.target_speed;
        const double c_lat = cfg.k_j * lateral.squared_jerk_integral() + cfg.k_t * horizon +
                             cfg.k_d * d_target * d_target;
        const double c_lon = cfg.k_j * longitudinal.squared_jerk_integral() +
                             cfg.k_t * horizon + cfg.k_s * dv * dv;
        cand.cost = cfg.k_lat * c_lat + cfg.k_lon * c_lon;

        traj.cost = cand.cost;
        cand.feasible = within_limits(traj, map, cfg) &&
                        !collision_check(traj, obstacles, footprint, cfg.safety_margin);
        traj.feasible = cand.feasible;
        cand.trajectory = std::move(traj);
        out.push_back(std::move(cand));
      }
    }
  }
  return out;
}

std::optional<PlanResult> sample_frenet(const hdmap::MapModel& map,
                                        const hdmap::FrenetPoint& ego,
                                        std::span<const CircleObstacle> obstacles,
                                        std::span<const FootprintCircle> footprint,
                                        const PlannerConfig& cfg) {
  auto candidates = enumerate_candidates(map, ego, obstacles, footprint, cfg);

  const EvaluatedCandidate* best = nullptr;
  for (const auto& cand : candidates) {
    if (!cand.feasible) continue;
    if (best == nullptr) {
      best = &cand;
      continue;
    }
    // Documented tie-breaking: cost, then |d_target|, then horizon, then
    // grid order (which is the iteration order, so strict comparisons keep
    // the earlier candidate).
    if (cand.cost < best->cost) {
      best = &cand;
    } else if (cand.cost == best->cost) {
      const double abs_d = std::abs(cand.spec.d_target);
      const double best_abs_d = std::abs(best->spec.d_target);
      if (abs_d < best_abs_d ||
          (abs_d == best_abs_d && cand.spec.horizon < best->spec.horizon)) {
        best = &cand;
      }
    }
  }
  if (best == nullptr) return std::nullopt;
  return PlanResult{best->trajectory, best->spec};
}

Trajectory follow_global(const hdmap::MapModel& map, const VehicleState& ego,
                         const PlannerConfig& cfg) {
  const auto ego_frenet = hdmap::cartesian_to_frenet(map, Vec2{ego.x, ego.y});

  Trajectory traj;
  traj.dt = cfg.dt_traj;
  traj.planner_id = "global_follow";
  traj.cost = 0.0;
  traj.feasible = true;

  const double route_end = std::max(0.0, map.reference_line.length() - cfg.route_end_margin);
  const double cruise = std::min(cfg.target_speed, map.speed_limit);
  const double horizon =
      cfg.t_horizons.empty() ? 5.0 : *std::max_element(cfg.t_horizons.begin(), cfg.t_horizons.end());
  const auto n = static_cast<std::size_t>(std::llround(horizon / cfg.dt_traj)) + 1;

  double s = ego_frenet.s;
  double v = ego.v;
  traj.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    TrajectoryPoint p;
    p.t_rel = static_cast<double>(i) * cfg.dt_traj;
    p.s = std::min(s, map.reference_line.length());
    p.d = 0.0;
    const auto pose = hdmap::frenet_to_cartesian(map, {.s = p.s, .d = 0.0});
    p.x = pose.position.x;
    p.y = pose.position.y;
    p.psi = pose.heading;
    p.kappa = map.reference_line.curvature_at(p.s);
    p.v = v;

    // Braking envelope toward a standstill at the route end.
    const double remaining = std::max(0.0, route_end - s);
    const double v_desired = std::min(cruise, std::sqrt(2.0 * cfg.a_max * remaining));
    const double dv = std::clamp(v_desired - v, -cfg.a_max * cfg.dt_traj, cfg.a_max * cfg.dt_traj);
    p.a = dv / cfg.dt_traj;
    traj.points.push_back(p);

    v = std::max(0.0, v + dv);
    s += v * cfg.dt_traj;
  }
  return traj;
}

}  // namespace drivestack::planner
