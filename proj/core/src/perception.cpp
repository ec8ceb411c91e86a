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

#include "drivestack/perception.hpp"

#include <algorithm>
#include <cmath>

namespace drivestack::perception {

std::string to_string(ZoneStatus s) {
  return s == ZoneStatus::entered_detection ? "entered_detection" : "cleared";
}

std::vector<DetectedObject> sense(const worldsim::World& truth, const SensorConfig& config,
                                  const hdmap::MapModel& map, std::int64_t tick,
                                  std::mt19937_64* noise_rng) {
  const double effective_range = config.range_clear * config.visibility_factor(truth.env.weather);
  const double half_fov = 0.5 * config.fov;
  const VehicleState& ego = truth.state;

  std::vector<DetectedObject> out;
  for (const auto& obs : truth.obstacles) {
    const double dx = obs.x - ego.x;
    const double dy = obs.y - ego.y;
    const double dist = std::hypot(dx, dy);
    if (dist > effective_range) continue;
    const double bearing = wrap_angle(std::atan2(dy, dx) - ego.psi);
    if (std::abs(bearing) > half_fov) continue;

    DetectedObject det;
    det.id = obs.id;
    det.kind = obs.kind;
    det.x = obs.x;
    det.y = obs.y;
    det.radius = obs.radius;
    det.first_seen_tick = tick;
    if (config.noise_sigma > 0.0 && noise_rng != nullptr) {
      std::normal_distribution<double> noise(0.0, config.noise_sigma);
      det.x += noise(*noise_rng);
      det.y += noise(*noise_rng);
    }
    const auto frenet = hdmap::cartesian_to_frenet(map, Vec2{det.x, det.y});
    det.s = frenet.s;
    det.d = frenet.d;
    out.push_back(std::move(det));
  }
  return out;
}

std::optional<ConstructionZoneEvent> ZoneClassifier::update(
    const std::vector<DetectedObject>& objects, double ego_s, std::int64_t tick) {
  double min_s = 0.0;
  double max_s = 0.0;
  int cones_ahead = 0;
  for (const auto& obj : objects) {
    if (obj.kind != worldsim::ObstacleKind::cone) continue;
    if (obj.s <= ego_s || obj.s - ego_s > cfg_.lookahead) continue;
    if (cones_ahead == 0) {
      min_s = max_s = obj.s;
    } else {
      min_s = std::min(min_s, obj.s);
      max_s = std::max(max_s, obj.s);
    }
    ++cones_ahead;
  }

  if (!active_) {
    if (cones_ahead >= cfg_.min_cones) {
      ++enter_streak_;
    } else {
      enter_streak_ = 0;
    }
    if (enter_streak_ >= cfg_.debounce_ticks) {
      active_ = true;
      enter_streak_ = 0;
      clear_streak_ = 0;
      s_start_ = min_s - cfg_.margin;
      s_end_ = max_s + cfg_.margin;
      cone_count_ = cones_ahead;
      return ConstructionZoneEvent{ZoneStatus::entered_detection, s_start_, s_end_, cone_count_,
                                   tick};
    }
    return std::nullopt;
  }

  // Active: grow the extent so it always contains every detected cone with
  // the margin; re-announce when it changes.
  bool extent_changed = false;
  if (cones_ahead > 0) {
    if (min_s - cfg_.margin < s_start_) {
      s_start_ = min_s - cfg_.margin;
      extent_changed = true;
    }
    if (max_s + cfg_.margin > s_end_) {
      s_end_ = max_s + cfg_.margin;
      extent_changed = true;
    }
    cone_count_ = std::max(cone_count_, cones_ahead);
  }

  if (ego_s > s_end_ && cones_ahead == 0) {
    ++clear_streak_;
  } else {
    clear_streak_ = 0;
  }
  if (clear_streak_ >= cfg_.debounce_ticks) {
    active_ = false;
    clear_streak_ = 0;
    enter_streak_ = 0;
    return ConstructionZoneEvent{ZoneStatus::cleared, s_start_, s_end_, cone_count_, tick};
  }
  if (extent_changed) {
    return ConstructionZoneEvent{ZoneStatus::entered_detection, s_start_, s_end_, cone_count_,
                                 tick};
  }
  return std::nullopt;
}

}  // namespace drivestack::perception
