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

#include "drivestack/hdmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace drivestack::hdmap {

namespace {

constexpr double kRangeEps = 1e-9;

double lerp(double a, double b, double u) { return a + (b - a) * u; }

}  // namespace

ReferenceLine ReferenceLine::from_waypoints(std::span<const Vec2> waypoints, double spacing) {
  if (waypoints.size() < 2) {
    throw DegenerateMapError("reference line needs at least 2 waypoints");
  }
  if (!(spacing > 0.0)) {
    throw DegenerateMapError("resampling spacing must be positive");
  }
  std::vector<double> raw_s(waypoints.size(), 0.0);
  for (std::size_t i = 0; i < waypoints.size(); ++i) {
    if (!std::isfinite(waypoints[i].x) || !std::isfinite(waypoints[i].y)) {
      throw DegenerateMapError("non-finite waypoint coordinate");
    }
    if (i > 0) {
      const double len = distance(waypoints[i - 1], waypoints[i]);
      if (len < 1e-12) {
        throw DegenerateMapError("consecutive waypoints must be distinct");
      }
      raw_s[i] = raw_s[i - 1] + len;
    }
  }
  const double total = raw_s.back();

  // Uniform resampling along the input polyline. The final point is always
  // kept; a sample that would leave a stub shorter than a quarter spacing is
  // dropped so heading estimates near the end stay stable.
  ReferenceLine line;
  std::size_t seg = 0;
  auto sample_at = [&](double target) {
    while (seg + 2 < raw_s.size() && raw_s[seg + 1] < target) ++seg;
    const double len = raw_s[seg + 1] - raw_s[seg];
    const double u = std::clamp((target - raw_s[seg]) / len, 0.0, 1.0);
    return Vec2{lerp(waypoints[seg].x, waypoints[seg + 1].x, u),
                lerp(waypoints[seg].y, waypoints[seg + 1].y, u)};
  };
  for (double target = 0.0; target <= total - 0.25 * spacing; target += spacing) {
    line.points_.push_back(sample_at(target));
  }
  line.points_.push_back(waypoints.back());
  if (line.points_.size() < 2) {
    line.points_ = {waypoints.front(), waypoints.back()};
  }

  const std::size_t n = line.points_.size();
  line.s_.assign(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    line.s_[i] = line.s_[i - 1] + distance(line.points_[i - 1], line.points_[i]);
  }

  // Per-vertex headings from central differences, unwrapped so linear
  // interpolation in s is safe across the +-pi seam.
  line.heading_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    Vec2 dir;
    if (i == 0) {
      dir = line.points_[1] - line.points_[0];
    } else if (i + 1 == n) {
      dir = line.points_[n - 1] - line.points_[n - 2];
    } else {
      dir = line.points_[i + 1] - line.points_[i - 1];
    }
    const double raw = std::atan2(dir.y, dir.x);
    line.heading_[i] = (i == 0) ? raw : line.heading_[i - 1] + wrap_angle(raw - line.heading_[i - 1]);
  }

  line.curvature_.assign(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    line.curvature_[i] = (line.heading_[i + 1] - line.heading_[i - 1]) / (line.s_[i + 1] - line.s_[i - 1]);
  }
  if (n > 2) {
    line.curvature_[0] = line.curvature_[1];
    line.curvature_[n - 1] = line.curvature_[n - 2];
  }
  return line;
}

std::size_t ReferenceLine::segment_index(double s) const {
  const auto it = std::upper_bound(s_.begin(), s_.end(), s);
  const std::size_t idx = static_cast<std::size_t>(std::distance(s_.begin(), it));
  if (idx == 0) return 0;
  return std::min(idx - 1, points_.size() - 2);
}

Vec2 ReferenceLine::point_at(double s) const {
  if (points_.size() < 2) throw DegenerateMapError("empty reference line");
  s = std::clamp(s, 0.0, length());
  const std::size_t i = segment_index(s);
  const double u = (s - s_[i]) / (s_[i + 1] - s_[i]);
  return {lerp(points_[i].x, points_[i + 1].x, u), lerp(points_[i].y, points_[i + 1].y, u)};
}

double ReferenceLine::unwrapped_heading_at(double s) const {
  s = std::clamp(s, 0.0, length());
  const std::size_t i = segment_index(s);
  const double u = (s - s_[i]) / (s_[i + 1] - s_[i]);
  return lerp(heading_[i], heading_[i + 1], u);
}

double ReferenceLine::heading_at(double s) const {
  if (points_.size() < 2) throw DegenerateMapError("empty reference line");
  return wrap_angle(unwrapped_heading_at(s));
}

double ReferenceLine::curvature_at(double s) const {
  if (points_.size() < 2) throw DegenerateMapError("empty reference line");
  s = std::clamp(s, 0.0, length());
  const std::size_t i = segment_index(s);
  const double u = (s - s_[i]) / (s_[i + 1] - s_[i]);
  return lerp(curvature_[i], curvature_[i + 1], u);
}

ReferenceLine::Projection ReferenceLine::project(const Vec2& p, double max_distance) const {
  if (points_.size() < 2) throw DegenerateMapError("empty reference line");
  const std::size_t n = points_.size();

  // Coarse reject on chord distance, which lower-bounds the exact distance.
  double best_chord_sq = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Vec2 seg = points_[i + 1] - points_[i];
    const double len_sq = seg.squared_norm();
    double u = (p - points_[i]).dot(seg) / len_sq;
    u = std::clamp(u, 0.0, 1.0);
    const Vec2 foot = points_[i] + seg * u;
    best_chord_sq = std::min(best_chord_sq, (p - foot).squared_norm());
  }
  if (best_chord_sq > max_distance * max_distance) {
    throw OutOfCorridorError("point farther than max projection distance from reference line");
  }

  // Normality residual along the heading field; roots are stationary points
  // of the distance to the line.
  auto residual = [&](double s) {
    const double h = unwrapped_heading_at(s);
    return (p - point_at(s)).dot(Vec2{std::cos(h), std::sin(h)});
  };

  struct Candidate {
    double s;
    double d;
    double dist;
  };
  std::vector<Candidate> candidates;
  auto add_candidate = [&](double s) {
    const double h = unwrapped_heading_at(s);
    const Vec2 tangent{std::cos(h), std::sin(h)};
    const Vec2 offset = p - point_at(s);
    candidates.push_back({s, tangent.cross(offset), offset.norm()});
  };

  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = residual(s_[i]);

  if (g.front() < 0.0) add_candidate(0.0);  // projects before the start
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (g[i] == 0.0) {
      add_candidate(s_[i]);
      continue;
    }
    if (g[i] * g[i + 1] < 0.0) {
      double lo = s_[i], hi = s_[i + 1];
      double glo = g[i];
      for (int iter = 0; iter < 60; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double gm = residual(mid);
        if (gm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((glo > 0.0) == (gm > 0.0)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
      }
      add_candidate(0.5 * (lo + hi));
    }
  }
  if (g.back() == 0.0) add_candidate(s_.back());
  if (g.back() > 0.0) add_candidate(length());  // projects beyond the end

  if (candidates.empty()) add_candidate(0.0);

  // Minimum distance wins; exact ties resolve to the lower s because
  // candidates are generated in ascending s and compared strictly.
  const Candidate* best = &candidates.front();
  for (const auto& c : candidates) {
    if (c.dist < best->dist) best = &c;
  }
  if (best->dist > max_distance) {
    throw OutOfCorridorError("point farther than max projection distance from reference line");
  }
  return Projection{best->s, best->d};
}

RoadType road_type_from_string(const std::string& s) {
  if (s == "highway") return RoadType::highway;
  if (s == "urban") return RoadType::urban;
  throw std::invalid_argument("unknown road type: " + s);
}

std::string to_string(RoadType t) {
  return t == RoadType::highway ? "highway" : "urban";
}

FrenetPoint cartesian_to_frenet(const MapModel& map, const Vec2& p,
                                double max_projection_distance) {
  const auto proj = map.reference_line.project(p, max_projection_distance);
  FrenetPoint f;
  f.s = proj.s;
  f.d = proj.d;
  return f;
}

CartesianPose frenet_to_cartesian(const MapModel& map, const FrenetPoint& f) {
  const double len = map.reference_line.length();
  if (f.s < -kRangeEps || f.s > len + kRangeEps) {
    throw OutOfRangeError("frenet s outside [0, length]");
  }
  const double s = std::clamp(f.s, 0.0, len);
  const double heading = map.reference_line.heading_at(s);
  const Vec2 base = map.reference_line.point_at(s);
  return CartesianPose{base + f.d * left_normal_from_heading(heading), heading};
}

CorridorBounds corridor_bounds(const MapModel& map, double s) {
  const double len = map.reference_line.length();
  if (s < -kRangeEps || s > len + kRangeEps) {
    throw OutOfRangeError("corridor query outside [0, length]");
  }
  return CorridorBounds{-0.5 * map.lane_width, (map.lane_count - 0.5) * map.lane_width};
}

}  // namespace drivestack::hdmap
