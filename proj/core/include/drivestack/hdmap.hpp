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

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "drivestack/geometry.hpp"

namespace drivestack::hdmap {

class OutOfCorridorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class OutOfRangeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class DegenerateMapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Curvilinear coordinates along a reference line: s is arc length, d the
/// signed lateral offset (positive left of the travel direction). The
/// derivative fields are time derivatives and default to zero.
struct FrenetPoint {
  double s = 0.0;
  double d = 0.0;
  double s_dot = 0.0;
  double s_ddot = 0.0;
  double d_dot = 0.0;
  double d_ddot = 0.0;
};

/// Arc-length-parametrized polyline with a continuous heading field.
///
/// Input waypoints are resampled to uniform spacing at load time. Headings are
/// assigned per vertex (central differences) and interpolated linearly in s,
/// which makes the normal field continuous across vertices; curvature comes
/// from finite differences of the tangent headings. Frenet projection solves
/// the normality condition (p - ref(s)) . t(s) = 0 on this field, so the
/// frenet->cartesian and cartesian->frenet maps invert each other to solver
/// tolerance for any point whose |d| stays below the local turning radius.
class ReferenceLine {
 public:
  static constexpr double kDefaultSpacing = 1.0;

  /// Empty line; every geometric query throws DegenerateMapError until the
  /// instance is replaced by from_waypoints().
  ReferenceLine() = default;

  /// Builds from raw waypoints; throws DegenerateMapError for fewer than two
  /// points, coincident consecutive points, or non-finite coordinates.
  static ReferenceLine from_waypoints(std::span<const Vec2> waypoints,
                                      double spacing = kDefaultSpacing);

  double length() const { return s_.back(); }
  std::size_t size() const { return points_.size(); }
  const std::vector<Vec2>& waypoints() const { return points_; }
  const std::vector<double>& cumulative_s() const { return s_; }

  Vec2 point_at(double s) const;
  /// Interpolated tangent heading, wrapped to (-pi, pi].
  double heading_at(double s) const;
  double curvature_at(double s) const;

  struct Projection {
    double s = 0.0;
    double d = 0.0;
  };
  /// Nearest-point projection under the continuous heading field. Ties
  /// (equidistant candidates) resolve to the lower s. Throws
  /// OutOfCorridorError when the point is farther than max_distance.
  Projection project(const Vec2& p, double max_distance) const;

 private:
  std::size_t segment_index(double s) const;
  double unwrapped_heading_at(double s) const;

  std::vector<Vec2> points_;
  std::vector<double> s_;        // cumulative arc length, s_[0] = 0
  std::vector<double> heading_;  // per-vertex, unwrapped
  std::vector<double> curvature_;
};

enum class RoadType { highway, urban };

RoadType road_type_from_string(const std::string& s);
std::string to_string(RoadType t);

/// Simplified HD map: one reference line (the centerline of the ego's initial
/// lane, the rightmost) plus a corridor of lane_count lanes extending left.
struct MapModel {
  ReferenceLine reference_line;
  double lane_width = 3.5;
  int lane_count = 1;
  double speed_limit = 25.0;
  RoadType road_type = RoadType::highway;
};

inline constexpr double kDefaultMaxProjectionDistance = 50.0;

/// Projects a point into Frenet coordinates. d is signed by the cross product
/// of the local tangent with the offset vector: left of travel is positive.
FrenetPoint cartesian_to_frenet(const MapModel& map, const Vec2& p,
                                double max_projection_distance = kDefaultMaxProjectionDistance);

struct CartesianPose {
  Vec2 position;
  double heading = 0.0;
};

/// Maps (s, d) back to the plane: reference(s) + d * left-normal(s). The
/// returned heading is the reference tangent heading at s.
CartesianPose frenet_to_cartesian(const MapModel& map, const FrenetPoint& f);

struct CorridorBounds {
  double d_min = 0.0;
  double d_max = 0.0;
};

/// Drivable lateral interval at s. The reference line is centered in its lane
/// and the remaining lanes extend to the left, so a map with n lanes of width
/// w spans [-w/2, (n - 1/2) * w].
CorridorBounds corridor_bounds(const MapModel& map, double s);

}  // namespace drivestack::hdmap
