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

#include "drivestack/stack.hpp"

#include <algorithm>
#include <cmath>

namespace drivestack::stack {

namespace {

constexpr double kDt = scenario::kTickSeconds;

// Queue depths per topic (the per-topic QoS the stack runs with).
constexpr int kStateDepth = 1;
constexpr int kEventDepth = 8;
constexpr int kCmdDepth = 4;

hdmap::FrenetPoint ego_frenet_state(const hdmap::MapModel& map, const VehicleState& ego) {
  auto f = hdmap::cartesian_to_frenet(map, Vec2{ego.x, ego.y});
  const double ref_heading = map.reference_line.heading_at(f.s);
  const double dpsi = wrap_angle(ego.psi - ref_heading);
  f.s_dot = ego.v * std::cos(dpsi);
  f.d_dot = ego.v * std::sin(dpsi);
  f.s_ddot = ego.a * std::cos(dpsi);
  f.d_ddot = ego.a * std::sin(dpsi);
  return f;
}

}  // namespace

// --- WorldSimNode -----------------------------------------------------------

WorldSimNode::WorldSimNode(msgbus::Bus& bus, const scenario::ScenarioSpec& spec)
    : timeline_(spec.environment),
      cmd_sub_(bus.subscribe<ControlCommand>(topics::kControlCmd, {.depth = kCmdDepth})),
      ego_pub_(bus.advertise<VehicleState>(topics::kEgoState, {.depth = kStateDepth})),
      truth_pub_(bus.advertise<msgs::WorldTruth>(topics::kWorldTruth, {.depth = kStateDepth})),
      heartbeat_pub_(bus.advertise<msgs::Heartbeat>(topics::health("worldsim"),
                                                    {.depth = kCmdDepth})) {
  world_.state = spec.ego.start;
  world_.params = spec.ego.params;
  world_.obstacles = spec.obstacles;
  world_.env = timeline_.empty() ? worldsim::Environment{} : timeline_.front().env;
}

void WorldSimNode::step(Tick tick) {
  const double now = static_cast<double>(tick) * kDt;
  for (const auto& keyframe : timeline_) {
    if (keyframe.time_s <= now) world_.env = keyframe.env;
  }

  msgs::ActuationReport report;
  if (tick > 0) {
    for (auto& obs : world_.obstacles) {
      obs.x += obs.vx * kDt;
      obs.y += obs.vy * kDt;
    }

    // Actuation: the emergency override preempts the controller when both
    // arrive in the same tick; with no command the demand decays to neutral.
    std::optional<ControlCommand> chosen;
    bool have_override = false;
    for (const auto& env : cmd_sub_.drain()) {
      const ControlCommand& cmd = env.payload();
      const bool is_override = cmd.source == CommandSource::emergency_override;
      if (is_override) {
        chosen = cmd;
        have_override = true;
      } else if (!have_override) {
        chosen = cmd;
      }
    }
    ControlCommand cmd = chosen.value_or(ControlCommand{});
    const auto applied = worldsim::apply_command(world_.params, prev_a_, prev_delta_, cmd, kDt);
    world_.state = worldsim::step(world_.state, world_.params, applied.a, applied.delta, kDt);
    prev_a_ = applied.a;
    prev_delta_ = applied.delta;

    report.a_applied = applied.a;
    report.delta_applied = applied.delta;
    report.accel_clamped = applied.accel_clamped;
    report.steer_clamped = applied.steer_clamped;
    report.accel_rate_limited = applied.accel_rate_limited;
    report.steer_rate_limited = applied.steer_rate_limited;
    report.had_command = chosen.has_value();
    report.applied_source = chosen.value_or(ControlCommand{}).source;
  }
  world_.state.t = static_cast<double>(tick) * kDt;

  ego_pub_.publish(world_.state);
  truth_pub_.publish(msgs::WorldTruth{world_.state, world_.obstacles, world_.env, report});
  heartbeat_pub_.publish(msgs::Heartbeat{"worldsim", tick, true});
}

// --- PerceptionNode ---------------------------------------------------------

PerceptionNode::PerceptionNode(msgbus::Bus& bus, const scenario::ScenarioSpec& spec,
                               std::shared_ptr<const hdmap::MapModel> map)
    : config_(spec.sensor),
      classifier_(spec.zone),
      map_(std::move(map)),
      noise_rng_(spec.seed),
      truth_sub_(bus.subscribe<msgs::WorldTruth>(topics::kWorldTruth, {.depth = kStateDepth})),
      objects_pub_(bus.advertise<msgs::DetectedObjectList>(topics::kPerceptionObjects,
                                                           {.depth = kStateDepth})),
      cz_pub_(bus.advertise<perception::ConstructionZoneEvent>(topics::kCzEvent,
                                                               {.depth = kEventDepth})),
      heartbeat_pub_(bus.advertise<msgs::Heartbeat>(topics::health("perception"),
                                                    {.depth = kCmdDepth})) {}

void PerceptionNode::step(Tick tick) {
  heartbeat_pub_.publish(msgs::Heartbeat{"perception", tick, true});
  const auto envelopes = truth_sub_.drain();
  if (envelopes.empty()) return;
  worldsim::World world;
  world.state = envelopes.back().payload().ego;
  world.obstacles = envelopes.back().payload().obstacles;
  world.env = envelopes.back().payload().env;

  auto detections = perception::sense(world, config_, *map_,
                                      tick, config_.noise_sigma > 0.0 ? &noise_rng_ : nullptr);
  for (auto& det : detections) {
    auto [it, inserted] = first_seen_.try_emplace(det.id, tick);
    det.first_seen_tick = it->second;
  }

  latency_queue_.push_back(msgs::DetectedObjectList{tick, std::move(detections)});
  if (latency_queue_.size() <= static_cast<std::size_t>(config_.latency_ticks)) {
    return;  // still filling the sensing pipeline
  }
  msgs::DetectedObjectList out = std::move(latency_queue_.front());
  latency_queue_.erase(latency_queue_.begin());
  out.tick = tick;

  const auto ego_f = hdmap::cartesian_to_frenet(*map_, Vec2{world.state.x, world.state.y});
  const auto event = classifier_.update(out.objects, ego_f.s, tick);
  objects_pub_.publish(std::move(out));
  if (event.has_value()) cz_pub_.publish(*event);
}

// --- OddNode -----------------------------------------------------------------

OddNode::OddNode(msgbus::Bus& bus, const scenario::ScenarioSpec& spec,
                 std::shared_ptr<const hdmap::MapModel> map)
    : definitions_(spec.odd_definitions),
      map_(std::move(map)),
      truth_sub_(bus.subscribe<msgs::WorldTruth>(topics::kWorldTruth, {.depth = kStateDepth})),
      ego_sub_(bus.subscribe<VehicleState>(topics::kEgoState, {.depth = kStateDepth})),
      cz_sub_(bus.subscribe<perception::ConstructionZoneEvent>(topics::kCzEvent,
                                                               {.depth = kEventDepth})),
      status_pub_(bus.advertise<msgs::OddStatusList>(topics::kOddStatus, {.depth = kStateDepth})),
      heartbeat_pub_(bus.advertise<msgs::Heartbeat>(topics::health("odd"), {.depth = kCmdDepth})) {}

void OddNode::step(Tick tick) {
  heartbeat_pub_.publish(msgs::Heartbeat{"odd", tick, true});
  for (const auto& env : truth_sub_.drain()) env_ = env.payload().env;
  for (const auto& env : ego_sub_.drain()) ego_ = env.payload();
  for (const auto& env : cz_sub_.drain()) {
    cz_active_ = env.payload().status == perception::ZoneStatus::entered_detection;
  }
  if (!env_.has_value() || !ego_.has_value()) return;

  msgs::OddStatusList list;
  list.tick = tick;
  list.statuses = odd::evaluate_all(definitions_, *env_, *map_, *ego_, cz_active_, tick);
  status_pub_.publish(std::move(list));
}

// --- ModeManagerNode ---------------------------------------------------------

ModeManagerNode::ModeManagerNode(msgbus::Bus& bus, const scenario::ScenarioSpec& spec,
                                 std::shared_ptr<const hdmap::MapModel> map,
                                 std::vector<std::string> monitored_nodes)
    : config_(spec.mode_manager),
      vehicle_params_(spec.ego.params),
      map_(std::move(map)),
      bus_(bus),
      health_(monitored_nodes, spec.mode_manager.heartbeat_timeout_ticks),
      odd_sub_(bus.subscribe<msgs::OddStatusList>(topics::kOddStatus, {.depth = kStateDepth})),
      cz_sub_(bus.subscribe<perception::ConstructionZoneEvent>(topics::kCzEvent,
                                                               {.depth = kEventDepth})),
      objects_sub_(bus.subscribe<msgs::DetectedObjectList>(topics::kPerceptionObjects,
                                                           {.depth = kStateDepth})),
      ego_sub_(bus.subscribe<VehicleState>(topics::kEgoState, {.depth = kStateDepth})),
      driver_sub_(bus.subscribe<hmi::DriverCommand>(topics::kHmiDriver, {.depth = kEventDepth})),
      mode_pub_(bus.advertise<msgs::ActiveMode>(topics::kModeActive, {.depth = kStateDepth})),
      override_pub_(bus.advertise<ControlCommand>(topics::kControlCmd, {.depth = kCmdDepth})),
      request_pub_(bus.advertise<hmi::TakeoverRequest>(topics::kHmiRequests, {.depth = kEventDepth})),
      heartbeat_pub_(bus.advertise<msgs::Heartbeat>(topics::health("mode_manager"),
                                                    {.depth = kCmdDepth})) {
  for (const auto& node : monitored_nodes) {
    health_subs_.push_back(bus.subscribe<msgs::Heartbeat>(topics::health(node), {.depth = kCmdDepth}));
    node_nominal_[node] = true;
  }
}

void ModeManagerNode::step(Tick tick) {
  using mode_manager::EventKind;
  using mode_manager::ModeEvent;

  heartbeat_pub_.publish(msgs::Heartbeat{"mode_manager", tick, true});

  std::vector<ModeEvent> events;

  // Driver input.
  for (const auto& env : driver_sub_.drain()) {
    ModeEvent ev;
    ev.tick = tick;
    switch (env.payload().kind) {
      case hmi::DriverCommandKind::engage: ev.kind = EventKind::driver_engage; break;
      case hmi::DriverCommandKind::disengage: ev.kind = EventKind::driver_disengage; break;
      case hmi::DriverCommandKind::ack_takeover: ev.kind = EventKind::driver_ack_takeover; break;
    }
    if (ev.kind == EventKind::driver_ack_takeover && mode_ == DriveMode::EMERGENCY_BRAKE) {
      driver_acked_in_emergency_ = true;
    }
    events.push_back(std::move(ev));
  }

  // ODD verdicts: edge events for restoration, level events while the active
  // mode's domain is violated (a violation that predates the mode change
  // must still force the handover).
  for (const auto& env : odd_sub_.drain()) {
    for (const auto& status : env.payload().statuses) {
      odd_satisfied_[status.mode] = status.satisfied;
      odd_violations_[status.mode] = status.violated_attributes;
    }
  }
  for (const auto& [mode, satisfied] : odd_satisfied_) {
    const auto prev = odd_satisfied_prev_.find(mode);
    if (prev != odd_satisfied_prev_.end() && !prev->second && satisfied) {
      ModeEvent ev;
      ev.kind = EventKind::odd_restored;
      ev.tick = tick;
      ev.mode = mode;
      events.push_back(std::move(ev));
    }
  }
  if ((mode_ == DriveMode::AUTOPILOT || mode_ == DriveMode::CZA)) {
    auto it = odd_satisfied_.find(mode_);
    if (it != odd_satisfied_.end() && !it->second) {
      ModeEvent ev;
      ev.kind = EventKind::odd_violated;
      ev.tick = tick;
      ev.mode = mode_;
      ev.details = odd_violations_[mode_];
      events.push_back(std::move(ev));
    }
  }
  odd_satisfied_prev_ = odd_satisfied_;

  // Construction-zone state, level-derived so a transition attempt repeats
  // until its ODD guard lets it through.
  for (const auto& env : cz_sub_.drain()) {
    cz_active_ = env.payload().status == perception::ZoneStatus::entered_detection;
  }
  if (cz_active_ && mode_ == DriveMode::AUTOPILOT) {
    ModeEvent ev;
    ev.kind = EventKind::cz_entered;
    ev.tick = tick;
    ev.details = {"construction_zone"};
    events.push_back(std::move(ev));
  }
  if (!cz_active_ && mode_ == DriveMode::CZA) {
    ModeEvent ev;
    ev.kind = EventKind::cz_cleared;
    ev.tick = tick;
    events.push_back(std::move(ev));
  }

  // Module health: heartbeat silence and degraded heartbeats.
  for (auto& sub : health_subs_) {
    for (const auto& env : sub.drain()) {
      const msgs::Heartbeat& hb = env.payload();
      health_.record_heartbeat(hb.node, env.publish_tick);
      const bool was_nominal = node_nominal_[hb.node];
      node_nominal_[hb.node] = hb.nominal;
      if (was_nominal && !hb.nominal) {
        ModeEvent ev;
        ev.tick = tick;
        if (hb.node == "planner") {
          ev.kind = EventKind::planner_infeasible;
          ev.details = {"no_feasible_trajectory"};
        } else {
          ev.kind = EventKind::module_unhealthy;
          ev.source = hb.node;
          ev.details = {hb.node};
        }
        events.push_back(std::move(ev));
      }
    }
  }
  for (auto& ev : health_.update(tick)) {
    ev.details = {ev.source};
    events.push_back(std::move(ev));
  }

  // Time-to-collision watchdog.
  for (const auto& env : ego_sub_.drain()) ego_ = env.payload();
  for (const auto& env : objects_sub_.drain()) objects_ = env.payload().objects;
  if (ego_.has_value() && is_automated(mode_)) {
    const auto ego_f = hdmap::cartesian_to_frenet(*map_, Vec2{ego_->x, ego_->y});
    auto ttc = mode_manager::check_ttc(ego_f, ego_->v, objects_, map_->lane_width,
                                       vehicle_params_.footprint_reach(), config_.ttc, tick);
    if (ttc.has_value()) events.push_back(std::move(*ttc));
  }

  // Takeover timer.
  if (mode_ == DriveMode::TAKEOVER_REQUESTED) {
    ++takeover_ticks_;
    if (takeover_ticks_ == config_.takeover_timeout_ticks) {
      ModeEvent ev;
      ev.kind = EventKind::takeover_timeout;
      ev.tick = tick;
      ev.details = {"takeover_timeout"};
      events.push_back(std::move(ev));
    }
  }

  // Standstill detection for the emergency-brake exit.
  const bool stopped = ego_.has_value() && ego_->v <= config_.stop_speed_eps;
  if (stopped && mode_ == DriveMode::EMERGENCY_BRAKE && driver_acked_in_emergency_) {
    ModeEvent ev;
    ev.kind = EventKind::vehicle_stopped;
    ev.tick = tick;
    events.push_back(std::move(ev));
  }

  apply_events(std::move(events), tick);

  mode_pub_.publish(msgs::ActiveMode{mode_, tick});
  if (mode_ == DriveMode::EMERGENCY_BRAKE) {
    override_pub_.publish(mode_manager::emergency_command(vehicle_params_, tick));
  }
}

void ModeManagerNode::apply_events(std::vector<mode_manager::ModeEvent> events, Tick tick) {
  using mode_manager::EventKind;

  std::stable_sort(events.begin(), events.end(),
                   [](const mode_manager::ModeEvent& a, const mode_manager::ModeEvent& b) {
                     return mode_manager::event_priority(a.kind) <
                            mode_manager::event_priority(b.kind);
                   });

  mode_manager::TransitionContext ctx;
  ctx.vehicle_stopped = ego_.has_value() && ego_->v <= config_.stop_speed_eps;
  ctx.driver_acked = driver_acked_in_emergency_;

  for (const auto& ev : events) {
    auto satisfied = [&](DriveMode m) {
      auto it = odd_satisfied_.find(m);
      return it != odd_satisfied_.end() && it->second;
    };
    ctx.odd_autopilot_satisfied = satisfied(DriveMode::AUTOPILOT);
    ctx.odd_cza_satisfied = satisfied(DriveMode::CZA);

    const DriveMode next = mode_manager::transition(mode_, ev, ctx);
    if (next == mode_) continue;

    if (next == DriveMode::TAKEOVER_REQUESTED) {
      takeover_ticks_ = 0;
      hmi::TakeoverRequest request;
      request.tick = tick;
      request.reasons = ev.details.empty() ? std::vector<std::string>{to_string(ev.kind)}
                                           : ev.details;
      request_pub_.publish(std::move(request));
    }
    if (mode_ == DriveMode::EMERGENCY_BRAKE && next == DriveMode::MANUAL) {
      driver_acked_in_emergency_ = false;
    }
    mode_ = next;
    if (mode_ == DriveMode::AUTOPILOT || mode_ == DriveMode::CZA) {
      // The planner's topic view of the mode lands one tick later; the forced
      // replan carries the new mode so the switch happens this tick.
      bus_.call_service<msgs::ReplanResponse>(topics::kReplanService,
                                              msgs::ReplanRequest{mode_, tick});
    }
  }
}

// --- PlannerNode --------------------------------------------------------------

PlannerNode::PlannerNode(msgbus::Bus& bus, const scenario::ScenarioSpec& spec,
                         std::shared_ptr<const hdmap::MapModel> map)
    : profiles_(spec.planner),
      vehicle_params_(spec.ego.params),
      map_(std::move(map)),
      objects_sub_(bus.subscribe<msgs::DetectedObjectList>(topics::kPerceptionObjects,
                                                           {.depth = kStateDepth})),
      ego_sub_(bus.subscribe<VehicleState>(topics::kEgoState, {.depth = kStateDepth})),
      mode_sub_(bus.subscribe<msgs::ActiveMode>(topics::kModeActive, {.depth = kStateDepth})),
      trajectory_pub_(bus.advertise<Trajectory>(topics::kPlanTrajectory, {.depth = kStateDepth})),
      heartbeat_pub_(bus.advertise<msgs::Heartbeat>(topics::health("planner"),
                                                    {.depth = kCmdDepth})) {
  bus.register_service<msgs::ReplanRequest, msgs::ReplanResponse>(
      topics::kReplanService, [this](const msgs::ReplanRequest& req) {
        force_replan_ = true;
        if (req.mode == DriveMode::AUTOPILOT || req.mode == DriveMode::CZA) {
          profile_mode_ = req.mode;
        }
        return msgs::ReplanResponse{true};
      });
}

void PlannerNode::step(Tick tick) {
  for (const auto& env : mode_sub_.drain()) {
    mode_view_ = env.payload().mode;
    if (mode_view_ == DriveMode::AUTOPILOT || mode_view_ == DriveMode::CZA) {
      profile_mode_ = mode_view_;
    }
  }
  for (const auto& env : ego_sub_.drain()) ego_ = env.payload();
  for (const auto& env : objects_sub_.drain()) objects_ = env.payload().objects;

  const bool active = is_automated(mode_view_) || force_replan_;
  if (active && ego_.has_value()) {
    const auto& profile = profile_mode_ == DriveMode::CZA ? profiles_.cza : profiles_.autopilot;
    const bool due =
        last_plan_tick_ < 0 || tick - last_plan_tick_ >= profile.replan_period_ticks;
    if (force_replan_ || due) plan(tick);
  } else {
    nominal_ = true;
  }
  force_replan_ = false;

  heartbeat_pub_.publish(msgs::Heartbeat{"planner", tick, nominal_});
}

void PlannerNode::plan(Tick tick) {
  last_plan_tick_ = tick;
  try {
    if (profile_mode_ == DriveMode::CZA) {
      const auto ego_f = ego_frenet_state(*map_, *ego_);
      std::vector<planner::CircleObstacle> circles;
      circles.reserve(objects_.size());
      for (const auto& obj : objects_) {
        circles.push_back(planner::CircleObstacle{obj.x, obj.y, obj.radius});
      }
      auto result = planner::sample_frenet(*map_, ego_f, circles,
                                           vehicle_params_.footprint_circles, profiles_.cza);
      if (!result.has_value()) {
        nominal_ = false;  // no feasible trajectory; the mode manager reacts
        return;
      }
      result->trajectory.created_tick = tick;
      trajectory_pub_.publish(std::move(result->trajectory));
    } else {
      auto traj = planner::follow_global(*map_, *ego_, profiles_.autopilot);
      traj.created_tick = tick;
      trajectory_pub_.publish(std::move(traj));
    }
    nominal_ = true;
  } catch (const hdmap::OutOfCorridorError&) {
    nominal_ = false;  // ego left the mapped corridor; planning is impossible
  }
}

// --- ControlNode ---------------------------------------------------------------

ControlNode::ControlNode(msgbus::Bus& bus, const scenario::ScenarioSpec& spec)
    : config_(spec.control),
      vehicle_params_(spec.ego.params),
      pid_(spec.control.pid),
      trajectory_sub_(bus.subscribe<Trajectory>(topics::kPlanTrajectory, {.depth = kStateDepth})),
      ego_sub_(bus.subscribe<VehicleState>(topics::kEgoState, {.depth = kStateDepth})),
      mode_sub_(bus.subscribe<msgs::ActiveMode>(topics::kModeActive, {.depth = kStateDepth})),
      cmd_pub_(bus.advertise<ControlCommand>(topics::kControlCmd, {.depth = kCmdDepth})),
      heartbeat_pub_(bus.advertise<msgs::Heartbeat>(topics::health("control"),
                                                    {.depth = kCmdDepth})) {}

void ControlNode::step(Tick tick) {
  for (const auto& env : mode_sub_.drain()) mode_view_ = env.payload().mode;
  for (const auto& env : ego_sub_.drain()) ego_ = env.payload();
  for (const auto& env : trajectory_sub_.drain()) trajectory_ = env.payload();

  nominal_ = true;
  const bool automated = is_automated(mode_view_);
  if (automated && !was_automated_) {
    pid_ = config_.pid;  // fresh engage: drop stale integral and error history
  }
  was_automated_ = automated;

  if (automated && ego_.has_value() && trajectory_.has_value() && !trajectory_->empty()) {
    try {
      auto out = control::track(*trajectory_, tick, *ego_, pid_, config_,
                                vehicle_params_.wheelbase, kDt);
      pid_ = out.pid;
      cmd_pub_.publish(out.cmd);
    } catch (const control::StaleTrajectoryError&) {
      nominal_ = false;  // planner has gone quiet; surface it
    }
  }
  heartbeat_pub_.publish(msgs::Heartbeat{"control", tick, nominal_});
}

// --- HmiNode --------------------------------------------------------------------

HmiNode::HmiNode(msgbus::Bus& bus, const scenario::ScenarioSpec& spec)
    : hmi_(spec.driver),
      mode_sub_(bus.subscribe<msgs::ActiveMode>(topics::kModeActive, {.depth = kStateDepth})),
      request_sub_(bus.subscribe<hmi::TakeoverRequest>(topics::kHmiRequests,
                                                       {.depth = kEventDepth})),
      driver_pub_(bus.advertise<hmi::DriverCommand>(topics::kHmiDriver, {.depth = kEventDepth})),
      display_pub_(bus.advertise<hmi::HmiMessage>(topics::kHmiDisplay, {.depth = kEventDepth})),
      heartbeat_pub_(bus.advertise<msgs::Heartbeat>(topics::health("hmi"), {.depth = kCmdDepth})) {}

void HmiNode::step(Tick tick) {
  heartbeat_pub_.publish(msgs::Heartbeat{"hmi", tick, true});

  std::optional<DriveMode> mode;
  for (const auto& env : mode_sub_.drain()) mode = env.payload().mode;
  std::vector<hmi::TakeoverRequest> requests;
  for (const auto& env : request_sub_.drain()) requests.push_back(env.payload());

  for (auto& message : hmi_.render(mode, requests, tick)) {
    display_pub_.publish(std::move(message));
  }
  if (auto cmd = hmi_.driver_step(tick); cmd.has_value()) {
    driver_pub_.publish(*cmd);
  }
}

// --- RecorderNode ----------------------------------------------------------------

RecorderNode::RecorderNode(msgbus::Bus& bus, std::ostream& out)
    : tap_(bus.subscribe_all()), out_(out) {}

void RecorderNode::step(Tick) {
  for (const auto& record : tap_.drain()) {
    out_ << "{\"tick\":" << record.publish_tick << ",\"topic\":\"" << record.topic
         << "\",\"seq\":" << record.sequence << ",\"data\":" << record.rendered << "}\n";
    per_topic_counts_[record.topic] += 1;
    total_records_ += 1;
  }
}

bool RecorderNode::reconcile(const msgbus::Bus& bus) const {
  for (const auto& topic : bus.topic_names()) {
    const auto it = per_topic_counts_.find(topic);
    const std::uint64_t recorded = it == per_topic_counts_.end() ? 0 : it->second;
    if (recorded != bus.publish_count(topic)) return false;
  }
  return true;
}

}  // namespace drivestack::stack
