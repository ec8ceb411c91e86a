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

#include <doctest.h>

#include <cmath>
#include <random>

#include "drivestack/worldsim.hpp"

using namespace drivestack;
using namespace drivestack::worldsim;

TEST_CASE("apply_command: neutral command from rest stays neutral") {
  VehicleParams params;
  const auto applied = apply_command(params, 0.0, 0.0, ControlCommand{0.0, 0.0}, 0.02);
  CHECK(applied.a == 0.0);
  CHECK(applied.delta == 0.0);
  CHECK_FALSE(applied.steer_clamped);
}

TEST_CASE("apply_command: steering demand clamps to delta_max") {
  VehicleParams params;
  params.delta_max = 0.6;
  params.steer_rate_max = 1000.0;  // rate not binding here
  const auto applied = apply_command(params, 0.0, 0.0, ControlCommand{0.0, 1.0}, 0.02);
  CHECK(applied.delta == doctest::Approx(0.6));
  CHECK(applied.steer_clamped);
}

TEST_CASE("apply_command: steer rate limit binds before the clamp") {
  VehicleParams params;
  params.delta_max = 0.6;
  params.steer_rate_max = 0.5;
  const auto applied = apply_command(params, 0.0, 0.0, ControlCommand{0.0, 0.6}, 0.02);
  CHECK(applied.delta == doctest::Approx(0.01));  // 0.5 rad/s * 0.02 s
  CHECK(applied.steer_rate_limited);
}

TEST_CASE("apply_command is idempotent for already-feasible commands") {
  VehicleParams params;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> accel(params.a_min, params.a_max);
  std::uniform_real_distribution<double> steer(-params.delta_max, params.delta_max);
  for (int i = 0; i < 200; ++i) {
    const ControlCommand cmd{accel(rng), steer(rng)};
    const auto first = apply_command(params, cmd.a_cmd, cmd.delta_cmd, cmd, 0.02);
    const auto second = apply_command(params, first.a, first.delta, cmd, 0.02);
    CHECK(first.a == doctest::Approx(cmd.a_cmd));
    CHECK(first.delta == doctest::Approx(cmd.delta_cmd));
    CHECK(second.a == doctest::Approx(first.a));
    CHECK(second.delta == doctest::Approx(first.delta));
  }
}

TEST_CASE("step: straight roll advances x only") {
  VehicleParams params;
  VehicleState state;
  state.v = 10.0;
  const auto next = step(state, params, 0.0, 0.0, 0.1);
  CHECK(next.x == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(next.y == 0.0);
  CHECK(next.psi == 0.0);
  CHECK(next.v == 10.0);
}

TEST_CASE("step: at rest only time would advance") {
  VehicleParams params;
  VehicleState state;
  const auto next = step(state, params, 0.0, 0.0, 0.02);
  CHECK(next.x == state.x);
  CHECK(next.y == state.y);
  CHECK(next.v == 0.0);
}

TEST_CASE("step: heading increment matches the bicycle update") {
  VehicleParams params;
  params.wheelbase = 2.9;
  VehicleState state;
  state.v = 10.0;
  const auto next = step(state, params, 0.0, 0.1, 0.02);
  const double expected = 10.0 * std::tan(0.1) / 2.9 * 0.02;
  CHECK(next.psi == doctest::Approx(expected).epsilon(1e-9));
  CHECK(expected == doctest::Approx(0.006923).epsilon(1e-3));
}

TEST_CASE("step: speed never goes negative under full braking") {
  VehicleParams params;
  VehicleState state;
  state.v = 1.0;
  for (int i = 0; i < 200; ++i) {
    state = step(state, params, params.a_min, 0.0, 0.02);
    CHECK(state.v >= 0.0);
  }
  CHECK(state.v == 0.0);
}

TEST_CASE("constant steer traces a circle of radius L/tan(delta) within 1%") {
  VehicleParams params;
  params.wheelbase = 2.9;
  const double delta = 0.2;
  const double v = 10.0;
  const double dt = 0.02;
  const double analytic_radius = params.wheelbase / std::tan(delta);

  VehicleState state;
  state.v = v;
  const double omega = v * std::tan(delta) / params.wheelbase;
  const int steps = static_cast<int>(std::ceil(2.0 * M_PI / omega / dt));

  std::vector<Vec2> samples;
  samples.reserve(steps);
  for (int i = 0; i < steps; ++i) {
    state = step(state, params, 0.0, delta, dt);
    samples.push_back({state.x, state.y});
  }
  Vec2 center{0.0, 0.0};
  for (const auto& p : samples) center = center + p;
  center = center * (1.0 / samples.size());
  double mean_radius = 0.0;
  for (const auto& p : samples) mean_radius += distance(p, center);
  mean_radius /= samples.size();

  CHECK(std::abs(mean_radius - analytic_radius) / analytic_radius < 0.01);
}

TEST_CASE("heading stays wrapped to (-pi, pi] over long turns") {
  VehicleParams params;
  VehicleState state;
  state.v = 15.0;
  for (int i = 0; i < 20000; ++i) {
    state = step(state, params, 0.0, 0.4, 0.02);
    CHECK(state.psi > -M_PI);
    CHECK(state.psi <= M_PI);
  }
}
