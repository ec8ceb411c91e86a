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

#include <cmath>

namespace drivestack {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double k) const { return {x * k, y * k}; }
  constexpr bool operator==(const Vec2& o) const = default;

  constexpr double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  /// z component of the 2D cross product; positive when `o` is left of this.
  constexpr double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
  constexpr double squared_norm() const { return x * x + y * y; }
};

constexpr Vec2 operator*(double k, const Vec2& v) { return v * k; }

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

/// Unit vector for a heading angle.
inline Vec2 unit_from_heading(double heading) {
  return {std::cos(heading), std::sin(heading)};
}

/// Left-hand normal of a heading's unit tangent.
inline Vec2 left_normal_from_heading(double heading) {
  return {-std::sin(heading), std::cos(heading)};
}

/// Wraps an angle to (-pi, pi].
inline double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * M_PI;
  a = std::fmod(a, two_pi);
  if (a <= -M_PI) a += two_pi;
  if (a > M_PI) a -= two_pi;
  return a;
}

inline double clamp_symmetric(double v, double bound) {
  if (v > bound) return bound;
  if (v < -bound) return -bound;
  return v;
}

}  // namespace drivestack
