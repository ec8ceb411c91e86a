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
#include <random>
#include <string>
#include <vector>

#include "drivestack/hdmap.hpp"
#include "drivestack/vehicle.hpp"
#include "drivestack/worldsim.hpp"

namespace drivestack::perception {

struct DetectedObject {
  std::string id;
  worldsim::ObstacleKind kind = worldsim::ObstacleKind::cone;
  double x = 0.0;
  double y = 0.0;
  double radius = 0.3;
  double s = 0.0;  // Frenet coordinates of the center
  double d = 0.0;
  std::int64_t first_seen_tick = 0;
};

/// Ground-truth sensor model. Detection is deterministic unless noise_sigma
/// is set, in which case seeded Gaussian position noise is added.
struct SensorConfig {
  double range_clear = 80.0;
  double fov = 2.0943951023931953;  // 120 degrees, full angle
  int latency_ticks = 0;
  double visibility_clear = 1.0;
  double visibility_rain_light = 0.7;
  double visibility_rain_heavy = 0.4;
  double noise_sigma = 0.0;

  double visibility_factor(worldsim::Weather w) const {
    switch (w) {
      case worldsim::Weather::clear: return visibility_clear;
      case worldsim::Weather::rain_light: return visibility_rain_light;
      case worldsim::Weather::rain_heavy: return visibility_rain_heavy;
    }
    return visibility_clear;
  }
};

/// Detects obstacles within the weather-scaled range and field of view.
/// An object is included iff its center distance is <= range_clear *
/// visibility_factor(weather) and its bearing is within fov/2 of the heading.
/// first_seen_tick bookkeeping and latency are handled by the caller.
std::vector<DetectedObject> sense(const worldsim::World& truth, const SensorConfig& config,
                                  const hdmap::MapModel& map, std::int64_t tick,
                                  std::mt19937_64* noise_rng = nullptr);

enum class ZoneStatus { entered_detection, cleared };

std::string to_string(ZoneStatus s);

struct ConstructionZoneEvent {
  ZoneStatus status = ZoneStatus::entered_detection;
  double s_start = 0.0;
  double s_end = 0.0;
  int cone_count = 0;
  std::int64_t tick = 0;
};

struct ZoneConfig {
  int min_cones = 3;
  double lookahead = 150.0;
  double margin = 10.0;
  int debounce_ticks = 5;
};

/// Cone-count construction-zone classifier with debounce hysteresis.
///
/// entered_detection fires once >= min_cones cone objects lie ahead within
/// lookahead for debounce_ticks consecutive ticks; the zone extent is the
/// running union of [min cone s - margin, max cone s + margin]. cleared fires
/// once the ego has passed s_end with no cones ahead, again debounced.
class ZoneClassifier {
 public:
  explicit ZoneClassifier(ZoneConfig cfg) : cfg_(cfg) {}

  std::optional<ConstructionZoneEvent> update(const std::vector<DetectedObject>& objects,
                                              double ego_s, std::int64_t tick);

  bool zone_active() const { return active_; }
  double s_start() const { return s_start_; }
  double s_end() const { return s_end_; }

 private:
  ZoneConfig cfg_;
  bool active_ = false;
  int enter_streak_ = 0;
  int clear_streak_ = 0;
  double s_start_ = 0.0;
  double s_end_ = 0.0;
  int cone_count_ = 0;
};

}  // namespace drivestack::perception
