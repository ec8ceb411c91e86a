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

#include <Eigen/Dense>
#include <optional>
#include <random>

#include "drivestack/planner.hpp"
#include "test_util.hpp"

using namespace drivestack;
using namespace drivestack::planner;
using drivestack::testutil::s_curve_map;
using drivestack::testutil::straight_map;

namespace {

// ---------------------------------------------------------------------------
// Independent exhaustive oracle. Re-derives every candidate from scratch:
// polynomials via a general LU solve, jerk costs via Gauss-Legendre
// quadrature, feasibility and collision via plain loops. Shares only the map
// geometry with the implementation (hdmap has its own oracle suite).
// ---------------------------------------------------------------------------

struct OraclePoly {
  Eigen::VectorXd c;
  double eval(double t) const {
    double acc = 0.0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) acc = acc * t + c(i);
    return acc;
  }
  double eval_derivative(int order, double t) const {
    double acc = 0.0;
    for (int i = static_cast<int>(c.size()) - 1; i >= order; --i) {
      double coeff = c(i);
      for (int k = 0; k < order; ++k) coeff *= (i - k);
      acc = acc * t + coeff;
    }
    return acc;
  }
};

OraclePoly oracle_quintic(double p0, double v0, double a0, double pT, double vT, double aT,
                          double T) {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(6, 6);
  Eigen::VectorXd b(6);
  A(0, 0) = 1;
  A(1, 1) = 1;
  A(2, 2) = 2;
  for (int j = 0; j < 6; ++j) {
    A(3, j) = std::pow(T, j);
    if (j >= 1) A(4, j) = j * std::pow(T, j - 1);
    if (j >= 2) A(5, j) = j * (j - 1) * std::pow(T, j - 2);
  }
  b << p0, v0, a0, pT, vT, aT;
  return OraclePoly{A.fullPivLu().solve(b)};
}

OraclePoly oracle_quartic(double p0, double v0, double a0, double vT, double aT, double T) {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(5, 5);
  Eigen::VectorXd b(5);
  A(0, 0) = 1;
  A(1, 1) = 1;
  A(2, 2) = 2;
  for (int j = 1; j < 5; ++j) A(3, j) = j * std::pow(T, j - 1);
  for (int j = 2; j < 5; ++j) A(4, j) = j * (j - 1) * std::pow(T, j - 2);
  b << p0, v0, a0, vT, aT;
  return OraclePoly{A.fullPivLu().solve(b)};
}

double oracle_jerk_integral(const OraclePoly& poly, double T) {
  constexpr double nodes[5] = {-0.906179845938664, -0.5384693101056831, 0.0,
                               0.5384693101056831, 0.906179845938664};
  constexpr double weights[5] = {0.23692688505618908, 0.47862867049936647, 0.5688888888888889,
                                 0.47862867049936647, 0.23692688505618908};
  const double half = 0.5 * T;
  double sum = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double j = poly.eval_derivative(3, half * (nodes[i] + 1.0));
    sum += weights[i] * j * j;
  }
  return sum * half;
}

struct OracleBest {
  CandidateSpec spec;
  double cost = 0.0;
};

std::optional<OracleBest> oracle_argmin(const hdmap::MapModel& map, const hdmap::FrenetPoint& ego,
                                        const std::vector<CircleObstacle>& obstacles,
                                        const std::vector<FootprintCircle>& footprint,
                                        const PlannerConfig& cfg) {
  const auto corridor = hdmap::corridor_bounds(map, std::clamp(ego.s, 0.0, map.reference_line.length()));
  std::optional<OracleBest> best;
  std::size_t index = 0;
  for (double d_target : cfg.d_targets) {
    if (d_target < corridor.d_min || d_target > corridor.d_max) continue;
    for (double T : cfg.t_horizons) {
      const auto lat = oracle_quintic(ego.d, ego.d_dot, ego.d_ddot, d_target, 0.0, 0.0, T);
      for (double v_target : cfg.v_targets) {
        const auto lon = oracle_quartic(ego.s, ego.s_dot, ego.s_ddot, v_target, 0.0, T);
        const CandidateSpec spec{d_target, T, v_target, index++};

        const auto n = static_cast<std::size_t>(std::llround(T / cfg.dt_traj)) + 1;
        std::vector<double> xs(n), ys(n), psis(n);
        bool feasible = true;
        for (std::size_t i = 0; i < n && feasible; ++i) {
          const double t = static_cast<double>(i) * cfg.dt_traj;
          const double s = lon.eval(t);
          const double d = lat.eval(t);
          if (s < 0.0 || s > map.reference_line.length()) {
            feasible = false;
            break;
          }
          const double s_dot = lon.eval_derivative(1, t);
          const double d_dot = lat.eval_derivative(1, t);
          const double s_ddot = lon.eval_derivative(2, t);
          const double d_ddot = lat.eval_derivative(2, t);
          const auto pose = hdmap::frenet_to_cartesian(map, {.s = s, .d = d});
          xs[i] = pose.position.x;
          ys[i] = pose.position.y;
          psis[i] = wrap_angle(pose.heading + std::atan2(d_dot, s_dot));
          const double v = std::hypot(s_dot, d_dot);
          const double a = (s_dot * s_ddot + d_dot * d_ddot) / std::max(v, 1e-6);
          if (v > cfg.v_max + 1e-9) feasible = false;
          if (std::abs(a) > cfg.a_max + 1e-9) feasible = false;
          if (d < corridor.d_min - 1e-9 || d > corridor.d_max + 1e-9) feasible = false;
        }
        if (feasible) {
          for (std::size_t i = 0; i + 1 < n && feasible; ++i) {
            const double ds = std::hypot(xs[i + 1] - xs[i], ys[i + 1] - ys[i]);
            if (ds < 1e-9) continue;
            const double kappa = wrap_angle(psis[i + 1] - psis[i]) / ds;
            if (std::abs(kappa) > cfg.kappa_max + 1e-9) feasible = false;
          }
        }
        if (feasible) {
          for (std::size_t i = 0; i < n && feasible; ++i) {
            for (const auto& circle : footprint) {
              const double cx = xs[i] + circle.offset * std::cos(psis[i]);
              const double cy = ys[i] + circle.offset * std::sin(psis[i]);
              for (const auto& obs : obstacles) {
                const double limit = circle.radius + obs.radius + cfg.safety_margin;
                if (std::hypot(cx - obs.x, cy - obs.y) < limit) {
                  feasible = false;
                  break;
                }
              }
              if (!feasible) break;
            }
          }
        }
        if (!feasible) continue;

        const double dv = lon.eval_derivative(1, T) - cfg.target_speed;
        const double c_lat = cfg.k_j * oracle_jerk_integral(lat, T) + cfg.k_t * T +
                             cfg.k_d * d_target * d_target;
        const double c_lon = cfg.k_j * oracle_jerk_integral(lon, T) + cfg.k_t * T +
                             cfg.k_s * dv * dv;
        const double cost = cfg.k_lat * c_lat + cfg.k_lon * c_lon;

        bool better = false;
        if (!best.has_value()) {
          better = true;
        } else if (cost < best->cost) {
          better = true;
        } else if (cost == best->cost) {
          const double abs_d = std::abs(spec.d_target);
          const double best_abs_d = std::abs(best->spec.d_target);
          better = abs_d < best_abs_d ||
                   (abs_d == best_abs_d && spec.horizon < best->spec.horizon);
        }
        if (better) best = OracleBest{spec, cost};
      }
    }
  }
  return best;
}

PlannerConfig small_config(double target_speed) {
  PlannerConfig cfg;
  cfg.set_target_speed(target_speed);
  cfg.d_targets = {-1.0, 0.0, 1.0};
  cfg.t_horizons = {2.0, 2.5, 3.0};
  cfg.safety_margin = 0.1;
  return cfg;
}

std::vector<FootprintCircle> small_footprint() { return {{0.0, 0.4}}; }

}  // namespace

TEST_CASE("follow_global: cruising on the centerline holds speed and d = 0") {
  const auto map = straight_map(600.0);
  PlannerConfig cfg;
  cfg.set_target_speed(15.0);
  VehicleState ego;
  ego.x = 50.0;
  ego.v = 15.0;
  const auto traj = follow_global(map, ego, cfg);
  REQUIRE(traj.points.size() > 100);
  for (const auto& p : traj.points) {
    CHECK(p.d == 0.0);
    CHECK(p.v == doctest::Approx(15.0).epsilon(1e-9));
  }
  CHECK(traj.planner_id == "global_follow");
}

TEST_CASE("follow_global: acceleration ramp reaches the target at v/a_max") {
  const auto map = straight_map(600.0);
  PlannerConfig cfg;
  cfg.set_target_speed(10.0);
  cfg.a_max = 2.0;
  cfg.t_horizons = {5.0};
  VehicleState ego;
  ego.x = 0.0;
  ego.v = 0.0;
  const auto traj = follow_global(map, ego, cfg);
  const auto& last = traj.points.back();
  CHECK(last.t_rel == doctest::Approx(5.0));
  CHECK(last.v == doctest::Approx(10.0).epsilon(1e-6));
  // Ramp is linear at a_max until the target.
  const auto& mid = traj.points[traj.points.size() / 2];
  CHECK(mid.v == doctest::Approx(2.0 * mid.t_rel).epsilon(1e-6));
}

TEST_CASE("follow_global: a laterally displaced ego still gets a d = 0 trajectory") {
  const auto map = straight_map(600.0);
  PlannerConfig cfg;
  VehicleState ego;
  ego.x = 100.0;
  ego.y = 1.0;
  ego.v = 10.0;
  const auto traj = follow_global(map, ego, cfg);
  for (const auto& p : traj.points) CHECK(p.d == 0.0);
}

TEST_CASE("collision_check: clear and colliding circle pairs") {
  Trajectory traj;
  TrajectoryPoint p;
  p.x = 0.0;
  p.y = 0.0;
  p.psi = 0.0;
  traj.points.push_back(p);
  const std::vector<FootprintCircle> footprint{{0.0, 1.0}};

  std::vector<CircleObstacle> far{{5.0, 0.0, 0.3}};
  CHECK_FALSE(collision_check(traj, far, footprint, 0.5));  // 5 > 1.8

  std::vector<CircleObstacle> near{{1.5, 0.0, 0.3}};
  CHECK(collision_check(traj, near, footprint, 0.5));  // 1.5 < 1.8
}

TEST_CASE("collision_check agrees with a brute-force distance oracle on 500 configurations") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> coord(-20.0, 20.0);
  std::uniform_real_distribution<double> heading(-M_PI, M_PI);
  std::uniform_real_distribution<double> radius(0.1, 1.5);
  std::uniform_real_distribution<double> offset(-1.0, 3.5);
  std::uniform_real_distribution<double> margin_dist(0.0, 1.0);
  std::uniform_int_distribution<int> count(1, 6);

  int collisions = 0;
  for (int trial = 0; trial < 500; ++trial) {
    Trajectory traj;
    const int points = count(rng) + 2;
    for (int i = 0; i < points; ++i) {
      TrajectoryPoint p;
      p.x = coord(rng);
      p.y = coord(rng);
      p.psi = heading(rng);
      traj.points.push_back(p);
    }
    std::vector<FootprintCircle> footprint;
    for (int i = 0, n = count(rng) / 2 + 1; i < n; ++i) {
      footprint.push_back({offset(rng), radius(rng)});
    }
    std::vector<CircleObstacle> obstacles;
    for (int i = 0, n = count(rng); i < n; ++i) {
      obstacles.push_back({coord(rng), coord(rng), radius(rng)});
    }
    const double margin = margin_dist(rng);

    bool expected = false;
    for (const auto& p : traj.points) {
      for (const auto& c : footprint) {
        const double cx = p.x + c.offset * std::cos(p.psi);
        const double cy = p.y + c.offset * std::sin(p.psi);
        for (const auto& o : obstacles) {
          const double dx = cx - o.x;
          const double dy = cy - o.y;
          if (std::sqrt(dx * dx + dy * dy) < c.radius + o.radius + margin) expected = true;
        }
      }
    }
    const bool got = collision_check(traj, obstacles, footprint, margin);
    CHECK(got == expected);
    collisions += got ? 1 : 0;
  }
  // Sanity: the random configurations exercise both outcomes.
  CHECK(collisions > 50);
  CHECK(collisions < 450);
}

TEST_CASE("sample_frenet: free straight road at target speed keeps the centerline") {
  const auto map = straight_map(600.0);
  auto cfg = small_config(10.0);
  hdmap::FrenetPoint ego;
  ego.s = 50.0;
  ego.s_dot = 10.0;
  const auto result = sample_frenet(map, ego, {}, small_footprint(), cfg);
  REQUIRE(result.has_value());
  CHECK(result->chosen.d_target == 0.0);
  CHECK(result->chosen.v_target == doctest::Approx(10.0));
  for (const auto& p : result->trajectory.points) {
    CHECK(std::abs(p.d) <= 1e-9);
  }
}

TEST_CASE("sample_frenet: a centerline blocker forces a unit lateral offset") {
  const auto map = straight_map(600.0);
  auto cfg = small_config(10.0);
  hdmap::FrenetPoint ego;
  ego.s = 20.0;
  ego.s_dot = 10.0;
  const std::vector<CircleObstacle> obstacles{{35.0, 0.0, 0.2}};

  const auto result = sample_frenet(map, ego, obstacles, small_footprint(), cfg);
  REQUIRE(result.has_value());
  CHECK(std::abs(result->chosen.d_target) == doctest::Approx(1.0));

  const auto oracle = oracle_argmin(map, ego, obstacles, small_footprint(), cfg);
  REQUIRE(oracle.has_value());
  CHECK(result->chosen.grid_index == oracle->spec.grid_index);
  CHECK(result->trajectory.cost == doctest::Approx(oracle->cost).epsilon(1e-9));
}

TEST_CASE("sample_frenet: a fully blocked corridor yields no trajectory") {
  const auto map = straight_map(600.0);
  auto cfg = small_config(10.0);
  cfg.d_targets = {-1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0};
  hdmap::FrenetPoint ego;
  ego.s = 50.0;
  ego.s_dot = 10.0;
  std::vector<CircleObstacle> wall;
  for (double d = -3.0; d <= 7.0; d += 0.5) wall.push_back({80.0, d, 0.5});
  const auto result = sample_frenet(map, ego, wall, small_footprint(), cfg);
  CHECK_FALSE(result.has_value());
}

TEST_CASE("oracle equivalence: the sampler matches exhaustive argmin on seeded instances") {
  std::mt19937_64 rng(555);
  std::uniform_real_distribution<double> ego_s(20.0, 100.0);
  std::uniform_real_distribution<double> ego_d(-1.0, 1.0);
  std::uniform_real_distribution<double> speed(8.0, 18.0);
  std::uniform_real_distribution<double> rate(-0.5, 0.5);
  std::uniform_real_distribution<double> obs_ahead(15.0, 80.0);
  std::uniform_real_distribution<double> obs_d(-2.0, 4.0);
  std::uniform_real_distribution<double> obs_r(0.2, 0.8);
  std::uniform_real_distribution<double> weight(0.05, 2.0);
  std::uniform_real_distribution<double> margin(0.1, 0.5);
  std::uniform_int_distribution<int> obs_count(0, 6);
  std::uniform_int_distribution<int> circles(1, 3);

  const auto straight = straight_map(600.0);
  const auto curved = s_curve_map();

  int agreements = 0;
  for (int instance = 0; instance < 60; ++instance) {
    const auto& map = instance % 2 == 0 ? straight : curved;

    PlannerConfig cfg;
    cfg.set_target_speed(speed(rng));
    cfg.k_j = weight(rng) * 0.1;
    cfg.k_t = weight(rng) * 0.1;
    cfg.k_d = weight(rng);
    cfg.k_s = weight(rng);
    cfg.k_lat = weight(rng);
    cfg.k_lon = weight(rng);
    cfg.safety_margin = margin(rng);

    hdmap::FrenetPoint ego;
    ego.s = ego_s(rng);
    ego.d = ego_d(rng);
    ego.s_dot = speed(rng);
    ego.d_dot = rate(rng);
    ego.s_ddot = rate(rng);
    ego.d_ddot = rate(rng);

    std::vector<CircleObstacle> obstacles;
    for (int i = 0, n = obs_count(rng); i < n; ++i) {
      const double s = ego.s + obs_ahead(rng);
      const auto pose = hdmap::frenet_to_cartesian(map, {.s = s, .d = obs_d(rng)});
      obstacles.push_back({pose.position.x, pose.position.y, obs_r(rng)});
    }
    std::vector<FootprintCircle> footprint;
    for (int i = 0, n = circles(rng); i < n; ++i) {
      footprint.push_back({0.9 * i, 0.5});
    }

    const auto result = sample_frenet(map, ego, obstacles, footprint, cfg);
    const auto oracle = oracle_argmin(map, ego, obstacles, footprint, cfg);
    REQUIRE(result.has_value() == oracle.has_value());
    if (result.has_value()) {
      CHECK(result->chosen.grid_index == oracle->spec.grid_index);
      CHECK(result->chosen.d_target == oracle->spec.d_target);
      CHECK(result->chosen.horizon == oracle->spec.horizon);
      CHECK(result->chosen.v_target == oracle->spec.v_target);
      CHECK(result->trajectory.cost ==
            doctest::Approx(oracle->cost).epsilon(1e-9));
      ++agreements;
    }
  }
  CHECK(agreements >= 50);
}

TEST_CASE("argmin is invariant under common scaling of k_lat and k_lon") {
  const auto map = straight_map(600.0);
  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> scale_dist(0.1, 10.0);
  PlannerConfig cfg;
  cfg.set_target_speed(12.0);
  hdmap::FrenetPoint ego;
  ego.s = 30.0;
  ego.s_dot = 12.0;
  ego.d = 0.4;
  const std::vector<CircleObstacle> obstacles{{60.0, 0.0, 0.4}, {75.0, 1.0, 0.3}};
  const auto footprint = small_footprint();

  const auto base = sample_frenet(map, ego, obstacles, footprint, cfg);
  REQUIRE(base.has_value());
  for (int i = 0; i < 10; ++i) {
    PlannerConfig scaled = cfg;
    const double k = scale_dist(rng);
    scaled.k_lat *= k;
    scaled.k_lon *= k;
    const auto result = sample_frenet(map, ego, obstacles, footprint, scaled);
    REQUIRE(result.has_value());
    CHECK(result->chosen.grid_index == base->chosen.grid_index);
  }
}

TEST_CASE("every returned trajectory revalidates against limits and collisions") {
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> speed(8.0, 16.0);
  std::uniform_real_distribution<double> obs_ahead(20.0, 70.0);
  std::uniform_real_distribution<double> obs_d(-1.5, 3.5);
  const auto map = straight_map(600.0);
  const auto footprint = small_footprint();

  for (int instance = 0; instance < 30; ++instance) {
    PlannerConfig cfg;
    cfg.set_target_speed(speed(rng));
    hdmap::FrenetPoint ego;
    ego.s = 40.0;
    ego.s_dot = speed(rng);
    std::vector<CircleObstacle> obstacles;
    for (int i = 0; i < 3; ++i) {
      const auto pose = hdmap::frenet_to_cartesian(map, {.s = ego.s + obs_ahead(rng),
                                                         .d = obs_d(rng)});
      obstacles.push_back({pose.position.x, pose.position.y, 0.4});
    }
    const auto result = sample_frenet(map, ego, obstacles, footprint, cfg);
    if (!result.has_value()) continue;
    const auto& traj = result->trajectory;
    CHECK(traj.feasible);
    CHECK_FALSE(collision_check(traj, obstacles, footprint, cfg.safety_margin));
    const auto corridor = hdmap::corridor_bounds(map, ego.s);
    for (std::size_t i = 0; i < traj.points.size(); ++i) {
      const auto& p = traj.points[i];
      CHECK(p.v <= cfg.v_max + 1e-6);
      CHECK(std::abs(p.a) <= cfg.a_max + 1e-6);
      CHECK(std::abs(p.kappa) <= cfg.kappa_max + 1e-6);
      CHECK(p.d >= corridor.d_min - 1e-6);
      CHECK(p.d <= corridor.d_max + 1e-6);
      if (i > 0) CHECK(p.t_rel > traj.points[i - 1].t_rel);
    }
  }
}
