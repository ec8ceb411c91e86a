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
#include <string>
#include <vector>

namespace drivestack {

struct TrajectoryPoint {
  double t_rel = 0.0;  // seconds since trajectory start, strictly increasing
  double x = 0.0;
  double y = 0.0;
  double psi = 0.0;
  double v = 0.0;
  double a = 0.0;
  double kappa = 0.0;
  double s = 0.0;  // Frenet coordinates on the map reference line
  double d = 0.0;
};

/// Time-parametrized trajectory, the planner -> control contract. Points are
/// spaced exactly dt seconds apart.
struct Trajectory {
  std::vector<TrajectoryPoint> points;
  double dt = 0.02;
  double cost = 0.0;
  bool feasible = true;
  std::string planner_id;
  std::int64_t created_tick = 0;

  bool empty() const { return points.empty(); }
};

}  // namespace drivestack
