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

#include "drivestack/messages.hpp"

#include <json.hpp>

namespace drivestack {

using json = nlohmann::ordered_json;

namespace {

json to_json(const VehicleState& v) {
  return json{{"x", v.x},     {"y", v.y}, {"psi", v.psi},     {"v", v.v},
              {"a", v.a},     {"delta", v.delta}, {"t", v.t}};
}

json to_json(const worldsim::Obstacle& o) {
  json j = json::array({o.id, worldsim::to_string(o.kind), o.x, o.y, o.radius});
  return j;
}

json to_json(const worldsim::Environment& e) {
  return json{{"weather", worldsim::to_string(e.weather)}, {"visibility", e.visibility}};
}

const char* source_name(CommandSource s) {
  return s == CommandSource::emergency_override ? "emergency_override" : "controller";
}

}  // namespace

std::string render_payload(const VehicleState& v) { return to_json(v).dump(); }

std::string render_payload(const Trajectory& t) {
  json points = json::array();
  for (const auto& p : t.points) {
    points.push_back(json::array({p.t_rel, p.x, p.y, p.psi, p.v, p.a, p.kappa, p.s, p.d}));
  }
  return json{{"planner_id", t.planner_id},
              {"created_tick", t.created_tick},
              {"dt", t.dt},
              {"cost", t.cost},
              {"feasible", t.feasible},
              {"points", std::move(points)}}
      .dump();
}

std::string render_payload(const ControlCommand& c) {
  return json{{"a_cmd", c.a_cmd},
              {"delta_cmd", c.delta_cmd},
              {"source", source_name(c.source)},
              {"tick", c.tick}}
      .dump();
}

}  // namespace drivestack

namespace drivestack::perception {

std::string render_payload(const ConstructionZoneEvent& e) {
  return nlohmann::ordered_json{{"status", to_string(e.status)},
                                {"s_start", e.s_start},
                                {"s_end", e.s_end},
                                {"cone_count", e.cone_count},
                                {"tick", e.tick}}
      .dump();
}

}  // namespace drivestack::perception

namespace drivestack::hmi {

std::string render_payload(const TakeoverRequest& r) {
  return nlohmann::ordered_json{{"tick", r.tick}, {"reasons", r.reasons}}.dump();
}

std::string render_payload(const DriverCommand& d) {
  return nlohmann::ordered_json{{"kind", to_string(d.kind)}, {"tick", d.tick}}.dump();
}

std::string render_payload(const HmiMessage& m) {
  return nlohmann::ordered_json{{"kind", to_string(m.kind)}, {"tick", m.tick},
                                {"detail", m.detail}}
      .dump();
}

}  // namespace drivestack::hmi

namespace drivestack::msgs {

using json = nlohmann::ordered_json;

std::string render_payload(const WorldTruth& t) {
  json obstacles = json::array();
  for (const auto& o : t.obstacles) obstacles.push_back(to_json(o));
  return json{{"ego", to_json(t.ego)},
              {"obstacles", std::move(obstacles)},
              {"env", to_json(t.env)},
              {"actuation",
               json{{"a", t.actuation.a_applied},
                    {"delta", t.actuation.delta_applied},
                    {"accel_clamped", t.actuation.accel_clamped},
                    {"steer_clamped", t.actuation.steer_clamped},
                    {"accel_rate_limited", t.actuation.accel_rate_limited},
                    {"steer_rate_limited", t.actuation.steer_rate_limited},
                    {"had_command", t.actuation.had_command},
                    {"source", source_name(t.actuation.applied_source)}}}}
      .dump();
}

std::string render_payload(const DetectedObjectList& l) {
  json objects = json::array();
  for (const auto& o : l.objects) {
    objects.push_back(json::array({o.id, worldsim::to_string(o.kind), o.x, o.y, o.radius, o.s,
                                   o.d, o.first_seen_tick}));
  }
  return json{{"tick", l.tick}, {"objects", std::move(objects)}}.dump();
}

std::string render_payload(const OddStatusList& l) {
  json statuses = json::array();
  for (const auto& s : l.statuses) {
    statuses.push_back(json{{"mode", to_string(s.mode)},
                            {"satisfied", s.satisfied},
                            {"violated", s.violated_attributes}});
  }
  return json{{"tick", l.tick}, {"statuses", std::move(statuses)}}.dump();
}

std::string render_payload(const ActiveMode& m) {
  return json{{"mode", to_string(m.mode)}, {"tick", m.tick}}.dump();
}

std::string render_payload(const Heartbeat& h) {
  return json{{"node", h.node}, {"tick", h.tick}, {"nominal", h.nominal}}.dump();
}

}  // namespace drivestack::msgs
