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

#include "drivestack/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace drivestack::scenario {

using json = nlohmann::json;

namespace {

const json& require(const json& j, const char* key, const std::string& field) {
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(field, "section missing");
  return *it;
}

std::vector<double> parse_grid(const json& j, const std::string& field) {
  std::vector<double> out;
  if (j.is_array()) {
    for (const auto& v : j) out.push_back(v.get<double>());
  } else if (j.is_object()) {
    const double min = j.at("min").get<double>();
    const double max = j.at("max").get<double>();
    const double step = j.at("step").get<double>();
    if (!(step > 0.0) || max < min) throw ValidationError(field, "bad grid range");
    for (double v = min; v <= max + 1e-9; v += step) out.push_back(v);
  } else {
    throw ValidationError(field, "expected array or {min,max,step}");
  }
  if (out.empty()) throw ValidationError(field, "grid must be non-empty");
  return out;
}

planner::PlannerConfig parse_planner(const json& root, const ScenarioSpec& spec) {
  planner::PlannerConfig cfg;
  cfg.set_target_speed(std::min(spec.map.speed_limit, 22.0));
  if (!root.contains("planner")) return cfg;
  const json& j = root.at("planner");

  if (j.contains("target_speed")) cfg.set_target_speed(j.at("target_speed").get<double>());
  if (j.contains("weights")) {
    const json& w = j.at("weights");
    cfg.k_j = w.value("k_j", cfg.k_j);
    cfg.k_t = w.value("k_t", cfg.k_t);
    cfg.k_d = w.value("k_d", cfg.k_d);
    cfg.k_s = w.value("k_s", cfg.k_s);
    cfg.k_lat = w.value("k_lat", cfg.k_lat);
    cfg.k_lon = w.value("k_lon", cfg.k_lon);
  }
  if (j.contains("d_targets")) cfg.d_targets = parse_grid(j.at("d_targets"), "planner.d_targets");
  if (j.contains("t_horizons")) {
    cfg.t_horizons = parse_grid(j.at("t_horizons"), "planner.t_horizons");
  }
  if (j.contains("v_targets")) cfg.v_targets = parse_grid(j.at("v_targets"), "planner.v_targets");
  if (j.contains("limits")) {
    const json& l = j.at("limits");
    cfg.v_max = l.value("v_max", cfg.v_max);
    cfg.a_max = l.value("a_max", cfg.a_max);
    cfg.kappa_max = l.value("kappa_max", cfg.kappa_max);
  }
  cfg.safety_margin = j.value("safety_margin", cfg.safety_margin);
  cfg.dt_traj = j.value("dt_traj", cfg.dt_traj);
  cfg.replan_period_ticks = j.value("replan_period_ticks", cfg.replan_period_ticks);
  cfg.route_end_margin = j.value("route_end_margin", cfg.route_end_margin);
  if (cfg.safety_margin < 0.0) throw ValidationError("planner.safety_margin", "must be >= 0");
  return cfg;
}

}  // namespace

hdmap::MapModel MapSection::build() const {
  hdmap::MapModel model;
  model.reference_line = hdmap::ReferenceLine::from_waypoints(waypoints);
  model.lane_width = lane_width;
  model.lane_count = lane_count;
  model.speed_limit = speed_limit;
  model.road_type = road_type;
  return model;
}

ScenarioSpec parse_scenario(const std::string& text, const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }

  try {
    ScenarioSpec spec;
    spec.name = root.value("name", std::string("unnamed"));
    spec.duration_s = root.value("duration_s", 0.0);
    if (!(spec.duration_s > 0.0)) throw ValidationError("duration_s", "must be positive");
    spec.seed = root.value("seed", std::uint64_t{0});

    // --- map ---
    const json& map = require(root, "map", "map");
    const json& waypoints = require(map, "waypoints", "map.waypoints");
    for (const auto& wp : waypoints) {
      spec.map.waypoints.push_back(Vec2{wp.at(0).get<double>(), wp.at(1).get<double>()});
    }
    if (spec.map.waypoints.size() < 2) throw ValidationError("map.waypoints", "need >= 2 points");
    spec.map.lane_count = map.value("lane_count", 1);
    spec.map.lane_width = map.value("lane_width", 3.5);
    spec.map.speed_limit = map.value("speed_limit", 25.0);
    spec.map.road_type = hdmap::road_type_from_string(map.value("road_type", "highway"));
    if (spec.map.lane_count < 1) throw ValidationError("map.lane_count", "must be >= 1");
    if (!(spec.map.lane_width > 0.0)) throw ValidationError("map.lane_width", "must be > 0");

    hdmap::MapModel model;
    try {
      model = spec.map.build();
    } catch (const hdmap::DegenerateMapError& e) {
      throw ValidationError("map.waypoints", e.what());
    }

    // --- ego ---
    const json& ego = require(root, "ego", "ego");
    const json& start = require(ego, "start", "ego.start");
    spec.ego.start.x = start.value("x", 0.0);
    spec.ego.start.y = start.value("y", 0.0);
    spec.ego.start.psi = start.value("psi", 0.0);
    spec.ego.start.v = start.value("v", 0.0);
    if (spec.ego.start.v < 0.0) throw ValidationError("ego.start.v", "must be >= 0");
    if (ego.contains("params")) {
      const json& p = ego.at("params");
      spec.ego.params.wheelbase = p.value("wheelbase", spec.ego.params.wheelbase);
      spec.ego.params.delta_max = p.value("delta_max", spec.ego.params.delta_max);
      spec.ego.params.a_min = p.value("a_min", spec.ego.params.a_min);
      spec.ego.params.a_max = p.value("a_max", spec.ego.params.a_max);
      spec.ego.params.steer_rate_max = p.value("steer_rate_max", spec.ego.params.steer_rate_max);
      spec.ego.params.accel_rate_max = p.value("accel_rate_max", spec.ego.params.accel_rate_max);
      if (p.contains("footprint_circles")) {
        spec.ego.params.footprint_circles.clear();
        for (const auto& c : p.at("footprint_circles")) {
          spec.ego.params.footprint_circles.push_back(
              FootprintCircle{c.at(0).get<double>(), c.at(1).get<double>()});
        }
      }
    }
    if (!(spec.ego.params.wheelbase > 0.0)) throw ValidationError("ego.params.wheelbase", "must be > 0");
    if (!(spec.ego.params.a_min < 0.0 && spec.ego.params.a_max > 0.0)) {
      throw ValidationError("ego.params", "need a_min < 0 < a_max");
    }
    if (spec.ego.params.footprint_circles.empty()) {
      throw ValidationError("ego.params.footprint_circles", "need >= 1 circle");
    }
    try {
      const auto f = hdmap::cartesian_to_frenet(model, Vec2{spec.ego.start.x, spec.ego.start.y});
      const auto bounds = hdmap::corridor_bounds(model, f.s);
      if (f.d < bounds.d_min || f.d > bounds.d_max) {
        throw ValidationError("ego.start", "outside the drivable corridor");
      }
    } catch (const hdmap::OutOfCorridorError&) {
      throw ValidationError("ego.start", "outside the drivable corridor");
    }

    // --- obstacles ---
    if (root.contains("obstacles")) {
      for (const auto& o : root.at("obstacles")) {
        worldsim::Obstacle obs;
        obs.id = o.value("id", std::string("obstacle_") + std::to_string(spec.obstacles.size()));
        obs.kind = worldsim::obstacle_kind_from_string(o.value("kind", "cone"));
        obs.x = o.at("x").get<double>();
        obs.y = o.at("y").get<double>();
        obs.radius = o.value("radius", 0.3);
        obs.cz_group = o.value("cz_group", std::string());
        obs.vx = o.value("vx", 0.0);
        obs.vy = o.value("vy", 0.0);
        if (!(obs.radius > 0.0)) throw ValidationError("obstacles.radius", "must be > 0");
        spec.obstacles.push_back(std::move(obs));
      }
    }

    // --- environment timeline ---
    if (root.contains("environment")) {
      double prev_time = -1.0;
      for (const auto& e : root.at("environment")) {
        EnvironmentKeyframe kf;
        kf.time_s = e.value("time_s", 0.0);
        kf.env.weather = worldsim::weather_from_string(e.value("weather", "clear"));
        kf.env.visibility = e.value("visibility", 1000.0);
        if (!(kf.env.visibility > 0.0)) throw ValidationError("environment.visibility", "must be > 0");
        if (kf.time_s < prev_time) throw ValidationError("environment", "timeline must be sorted");
        prev_time = kf.time_s;
        spec.environment.push_back(kf);
      }
    }
    if (spec.environment.empty()) {
      spec.environment.push_back(EnvironmentKeyframe{});
    }

    // --- driver ---
    if (root.contains("driver")) {
      const json& d = root.at("driver");
      if (d.contains("engage_at_tick")) {
        spec.driver.engage_at_tick = d.at("engage_at_tick").get<std::int64_t>();
      }
      spec.driver.ack_delay_ticks = d.value("ack_delay_ticks", std::int64_t{0});
      spec.driver.responds_to_takeover = d.value("responds_to_takeover", true);
      if (spec.driver.ack_delay_ticks < 0) {
        throw ValidationError("driver.ack_delay_ticks", "must be >= 0");
      }
    }

    // --- odd definitions ---
    if (root.contains("odd")) {
      for (const auto& d : root.at("odd")) {
        odd::OddDefinition def;
        def.mode = drive_mode_from_string(d.at("mode").get<std::string>());
        if (d.contains("allowed_road_types")) {
          def.allowed_road_types.clear();
          for (const auto& r : d.at("allowed_road_types")) {
            def.allowed_road_types.insert(hdmap::road_type_from_string(r.get<std::string>()));
          }
        }
        if (d.contains("allowed_weather")) {
          def.allowed_weather.clear();
          for (const auto& w : d.at("allowed_weather")) {
            def.allowed_weather.insert(worldsim::weather_from_string(w.get<std::string>()));
          }
        }
        def.min_visibility = d.value("min_visibility", def.min_visibility);
        if (d.contains("speed_range")) {
          def.v_min = d.at("speed_range").at(0).get<double>();
          def.v_max = d.at("speed_range").at(1).get<double>();
        }
        def.construction_zone_permitted =
            d.value("construction_zone_permitted", def.construction_zone_permitted);
        if (def.v_min > def.v_max) throw ValidationError("odd.speed_range", "v_min > v_max");
        if (def.allowed_road_types.empty() || def.allowed_weather.empty()) {
          throw ValidationError("odd", "allowed sets must be non-empty");
        }
        spec.odd_definitions.push_back(std::move(def));
      }
    }

    // --- sensor ---
    if (root.contains("sensor")) {
      const json& s = root.at("sensor");
      spec.sensor.range_clear = s.value("range_clear", spec.sensor.range_clear);
      if (s.contains("fov_deg")) spec.sensor.fov = s.at("fov_deg").get<double>() * M_PI / 180.0;
      spec.sensor.latency_ticks = s.value("latency_ticks", spec.sensor.latency_ticks);
      spec.sensor.noise_sigma = s.value("noise_sigma", spec.sensor.noise_sigma);
      if (s.contains("visibility_factors")) {
        const json& v = s.at("visibility_factors");
        spec.sensor.visibility_clear = v.value("clear", spec.sensor.visibility_clear);
        spec.sensor.visibility_rain_light = v.value("rain_light", spec.sensor.visibility_rain_light);
        spec.sensor.visibility_rain_heavy = v.value("rain_heavy", spec.sensor.visibility_rain_heavy);
      }
      if (!(spec.sensor.range_clear > 0.0)) throw ValidationError("sensor.range_clear", "must be > 0");
      if (!(spec.sensor.fov > 0.0 && spec.sensor.fov <= 2.0 * M_PI + 1e-9)) {
        throw ValidationError("sensor.fov_deg", "must be in (0, 360]");
      }
      if (spec.sensor.latency_ticks < 0) throw ValidationError("sensor.latency_ticks", "must be >= 0");
    }

    // --- zone classifier ---
    if (root.contains("zone")) {
      const json& z = root.at("zone");
      spec.zone.min_cones = z.value("min_cones", spec.zone.min_cones);
      spec.zone.lookahead = z.value("lookahead", spec.zone.lookahead);
      spec.zone.margin = z.value("margin", spec.zone.margin);
      spec.zone.debounce_ticks = z.value("debounce_ticks", spec.zone.debounce_ticks);
    }

    // --- planner profiles ---
    spec.planner.autopilot = parse_planner(root, spec);
    spec.planner.cza = spec.planner.autopilot;
    // CZA profile: reduced target speed, enlarged safety margin.
    spec.planner.cza.set_target_speed(std::min(spec.planner.autopilot.target_speed, 16.0));
    spec.planner.cza.safety_margin = std::max(spec.planner.autopilot.safety_margin, 0.8);
    if (root.contains("planner") && root.at("planner").contains("cza")) {
      const json& c = root.at("planner").at("cza");
      if (c.contains("target_speed")) spec.planner.cza.set_target_speed(c.at("target_speed").get<double>());
      spec.planner.cza.safety_margin = c.value("safety_margin", spec.planner.cza.safety_margin);
      if (c.contains("d_targets")) {
        spec.planner.cza.d_targets = parse_grid(c.at("d_targets"), "planner.cza.d_targets");
      }
      if (c.contains("v_targets")) {
        spec.planner.cza.v_targets = parse_grid(c.at("v_targets"), "planner.cza.v_targets");
      }
    }

    // --- control ---
    spec.control.stanley.delta_max = spec.ego.params.delta_max;
    if (root.contains("control")) {
      const json& c = root.at("control");
      if (c.contains("pid")) {
        const json& p = c.at("pid");
        spec.control.pid.kp = p.value("kp", spec.control.pid.kp);
        spec.control.pid.ki = p.value("ki", spec.control.pid.ki);
        spec.control.pid.kd = p.value("kd", spec.control.pid.kd);
        spec.control.pid.integral_limit = p.value("integral_limit", spec.control.pid.integral_limit);
      }
      if (c.contains("stanley")) {
        const json& s = c.at("stanley");
        spec.control.stanley.k_gain = s.value("k_gain", spec.control.stanley.k_gain);
        spec.control.stanley.v_eps = s.value("v_eps", spec.control.stanley.v_eps);
      }
      spec.control.t_look = c.value("t_look", spec.control.t_look);
      spec.control.max_staleness_ticks = c.value("max_staleness_ticks", spec.control.max_staleness_ticks);
      if (!(spec.control.stanley.k_gain > 0.0)) throw ValidationError("control.stanley.k_gain", "must be > 0");
      if (!(spec.control.stanley.v_eps > 0.0)) throw ValidationError("control.stanley.v_eps", "must be > 0");
    }

    // --- mode manager ---
    if (root.contains("mode_manager")) {
      const json& m = root.at("mode_manager");
      spec.mode_manager.ttc.threshold = m.value("ttc_threshold", spec.mode_manager.ttc.threshold);
      spec.mode_manager.takeover_timeout_ticks =
          m.value("takeover_timeout_ticks", spec.mode_manager.takeover_timeout_ticks);
      spec.mode_manager.heartbeat_timeout_ticks =
          m.value("heartbeat_timeout_ticks", spec.mode_manager.heartbeat_timeout_ticks);
    }

    // --- pass criteria ---
    if (root.contains("pass_criteria")) {
      const json& p = root.at("pass_criteria");
      spec.pass_criteria.require_no_collision = p.value("require_no_collision", false);
      if (p.contains("require_route_completion_s")) {
        spec.pass_criteria.require_route_completion_s = p.at("require_route_completion_s").get<double>();
      }
      if (p.contains("min_obstacle_clearance")) {
        spec.pass_criteria.min_obstacle_clearance = p.at("min_obstacle_clearance").get<double>();
      }
      if (p.contains("max_speed_in_zone")) {
        spec.pass_criteria.max_speed_in_zone = p.at("max_speed_in_zone").get<double>();
      }
      if (p.contains("required_mode_sequence")) {
        for (const auto& m : p.at("required_mode_sequence")) {
          spec.pass_criteria.required_mode_sequence.push_back(
              drive_mode_from_string(m.get<std::string>()));
        }
      }
      if (p.contains("max_final_lateral_offset")) {
        const json& l = p.at("max_final_lateral_offset");
        spec.pass_criteria.max_final_lateral_offset =
            LateralOffsetCriterion{l.at("s_from").get<double>(), l.at("max_abs_d").get<double>()};
      }
      spec.pass_criteria.require_final_stopped = p.value("require_final_stopped", false);
      for (const auto& threshold :
           {spec.pass_criteria.min_obstacle_clearance, spec.pass_criteria.max_speed_in_zone}) {
        if (threshold.has_value() && *threshold < 0.0) {
          throw ValidationError("pass_criteria", "thresholds must be >= 0");
        }
      }
    }

    return spec;
  } catch (const json::exception& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

ScenarioSpec load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), path);
}

}  // namespace drivestack::scenario
