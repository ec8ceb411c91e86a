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

#include "drivestack/runner.hpp"

#include <unistd.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "drivestack/stack.hpp"

namespace drivestack::runner {

using json = nlohmann::json;

namespace {

std::string unique_trace_path(const std::string& name) {
  static std::atomic<std::uint64_t> counter{0};
  const auto dir = std::filesystem::temp_directory_path();
  const auto id = counter.fetch_add(1);
  return (dir / (name + "." + std::to_string(::getpid()) + "." + std::to_string(id) +
                 ".trace.jsonl"))
      .string();
}

bool is_subsequence(const std::vector<DriveMode>& needle, const std::vector<ModeSample>& haystack) {
  std::size_t i = 0;
  for (const auto& sample : haystack) {
    if (i < needle.size() && sample.mode == needle[i]) ++i;
  }
  return i >= needle.size();
}

}  // namespace

TraceSummary summarize_trace(const std::string& trace_path, const scenario::ScenarioSpec& spec) {
  std::ifstream in(trace_path);
  if (!in) throw InternalError("cannot open trace file: " + trace_path);
  const auto map = spec.map.build();

  TraceSummary summary;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json record = json::parse(line);
    const std::string topic = record.at("topic").get<std::string>();
    const Tick tick = record.at("tick").get<Tick>();
    const json& data = record.at("data");

    if (topic == topics::kWorldTruth) {
      TruthSample sample;
      sample.tick = tick;
      const json& ego = data.at("ego");
      sample.ego.x = ego.at("x").get<double>();
      sample.ego.y = ego.at("y").get<double>();
      sample.ego.psi = ego.at("psi").get<double>();
      sample.ego.v = ego.at("v").get<double>();
      sample.ego.a = ego.at("a").get<double>();
      sample.ego.delta = ego.at("delta").get<double>();
      sample.ego.t = ego.at("t").get<double>();
      sample.env.weather = worldsim::weather_from_string(data.at("env").at("weather"));
      sample.env.visibility = data.at("env").at("visibility").get<double>();
      sample.had_command = data.at("actuation").at("had_command").get<bool>();
      sample.applied_source =
          data.at("actuation").at("source").get<std::string>() == "emergency_override"
              ? CommandSource::emergency_override
              : CommandSource::controller;
      for (const auto& o : data.at("obstacles")) {
        worldsim::Obstacle obs;
        obs.id = o.at(0).get<std::string>();
        obs.kind = worldsim::obstacle_kind_from_string(o.at(1).get<std::string>());
        obs.x = o.at(2).get<double>();
        obs.y = o.at(3).get<double>();
        obs.radius = o.at(4).get<double>();
        sample.obstacles.push_back(std::move(obs));
      }
      const auto frenet = hdmap::cartesian_to_frenet(map, Vec2{sample.ego.x, sample.ego.y});
      sample.ego_s = frenet.s;
      sample.ego_d = frenet.d;
      summary.truth.push_back(std::move(sample));
    } else if (topic == topics::kModeActive) {
      ModeSample sample;
      sample.tick = tick;
      sample.mode = drive_mode_from_string(data.at("mode").get<std::string>());
      if (summary.mode_changes.empty() || summary.mode_changes.back().mode != sample.mode) {
        summary.mode_changes.push_back(sample);
      }
      summary.modes.push_back(sample);
    } else if (topic == topics::kCzEvent) {
      ZoneEventSample sample;
      sample.tick = tick;
      sample.status = data.at("status").get<std::string>() == "cleared"
                          ? perception::ZoneStatus::cleared
                          : perception::ZoneStatus::entered_detection;
      sample.s_start = data.at("s_start").get<double>();
      sample.s_end = data.at("s_end").get<double>();
      summary.zone_events.push_back(sample);
    }
  }
  return summary;
}

Verdict evaluate(const TraceSummary& trace, const scenario::ScenarioSpec& spec) {
  const auto& criteria = spec.pass_criteria;
  Verdict verdict;
  verdict.metrics.mode_timeline = trace.mode_changes;
  if (!trace.truth.empty()) {
    verdict.metrics.final_s = trace.truth.back().ego_s;
    verdict.metrics.final_v = trace.truth.back().ego.v;
  }

  // Collision and clearance sweep over the ground-truth stream.
  std::optional<Tick> first_collision;
  double min_clearance = std::numeric_limits<double>::infinity();
  double max_abs_d = 0.0;
  for (const auto& sample : trace.truth) {
    max_abs_d = std::max(max_abs_d, std::abs(sample.ego_d));
    const double cos_psi = std::cos(sample.ego.psi);
    const double sin_psi = std::sin(sample.ego.psi);
    for (const auto& circle : spec.ego.params.footprint_circles) {
      const double cx = sample.ego.x + circle.offset * cos_psi;
      const double cy = sample.ego.y + circle.offset * sin_psi;
      for (const auto& obs : sample.obstacles) {
        const double gap = std::hypot(cx - obs.x, cy - obs.y) - circle.radius - obs.radius;
        min_clearance = std::min(min_clearance, gap);
        if (gap < 0.0 && !first_collision.has_value()) first_collision = sample.tick;
      }
    }
  }
  verdict.metrics.min_clearance = min_clearance;
  verdict.metrics.max_abs_d = max_abs_d;

  auto add = [&](CriterionResult result) {
    verdict.passed = verdict.passed && result.passed;
    verdict.results.push_back(std::move(result));
  };

  if (criteria.require_no_collision) {
    CriterionResult r;
    r.name = "no_collision";
    r.passed = !first_collision.has_value();
    if (first_collision.has_value()) {
      r.first_bad_tick = first_collision;
      r.detail = "footprint overlaps an obstacle";
    }
    add(std::move(r));
  }

  if (criteria.min_obstacle_clearance.has_value()) {
    CriterionResult r;
    r.name = "min_obstacle_clearance";
    r.passed = min_clearance >= *criteria.min_obstacle_clearance;
    if (!r.passed) {
      std::ostringstream os;
      os << "min clearance " << min_clearance << " < " << *criteria.min_obstacle_clearance;
      r.detail = os.str();
      for (const auto& sample : trace.truth) {
        const double cos_psi = std::cos(sample.ego.psi);
        const double sin_psi = std::sin(sample.ego.psi);
        bool hit = false;
        for (const auto& circle : spec.ego.params.footprint_circles) {
          const double cx = sample.ego.x + circle.offset * cos_psi;
          const double cy = sample.ego.y + circle.offset * sin_psi;
          for (const auto& obs : sample.obstacles) {
            if (std::hypot(cx - obs.x, cy - obs.y) - circle.radius - obs.radius <
                *criteria.min_obstacle_clearance) {
              hit = true;
              break;
            }
          }
          if (hit) break;
        }
        if (hit) {
          r.first_bad_tick = sample.tick;
          break;
        }
      }
    }
    add(std::move(r));
  }

  if (criteria.require_route_completion_s.has_value()) {
    CriterionResult r;
    r.name = "route_completion";
    r.passed = !trace.truth.empty() &&
               trace.truth.back().ego_s >= *criteria.require_route_completion_s;
    if (!r.passed) {
      std::ostringstream os;
      os << "final s " << verdict.metrics.final_s << " < " << *criteria.require_route_completion_s;
      r.detail = os.str();
    }
    add(std::move(r));
  }

  if (criteria.max_speed_in_zone.has_value()) {
    CriterionResult r;
    r.name = "max_speed_in_zone";
    r.passed = true;
    // Replays the zone-extent stream against the truth stream.
    std::size_t event_idx = 0;
    bool zone_active = false;
    double s_start = 0.0, s_end = 0.0;
    for (const auto& sample : trace.truth) {
      while (event_idx < trace.zone_events.size() &&
             trace.zone_events[event_idx].tick <= sample.tick) {
        const auto& ev = trace.zone_events[event_idx];
        zone_active = ev.status == perception::ZoneStatus::entered_detection;
        s_start = ev.s_start;
        s_end = ev.s_end;
        ++event_idx;
      }
      if (zone_active && sample.ego_s >= s_start && sample.ego_s <= s_end &&
          sample.ego.v > *criteria.max_speed_in_zone) {
        r.passed = false;
        r.first_bad_tick = sample.tick;
        std::ostringstream os;
        os << "speed " << sample.ego.v << " > " << *criteria.max_speed_in_zone << " inside zone";
        r.detail = os.str();
        break;
      }
    }
    add(std::move(r));
  }

  if (!criteria.required_mode_sequence.empty()) {
    CriterionResult r;
    r.name = "mode_sequence";
    r.passed = is_subsequence(criteria.required_mode_sequence, trace.mode_changes);
    if (!r.passed) {
      std::string seq;
      for (const auto& sample : trace.mode_changes) {
        if (!seq.empty()) seq += " ";
        seq += to_string(sample.mode);
      }
      r.detail = "timeline: " + seq;
    }
    add(std::move(r));
  }

  if (criteria.max_final_lateral_offset.has_value()) {
    CriterionResult r;
    r.name = "final_lateral_offset";
    r.passed = true;
    for (const auto& sample : trace.truth) {
      if (sample.ego_s >= criteria.max_final_lateral_offset->s_from &&
          std::abs(sample.ego_d) > criteria.max_final_lateral_offset->max_abs_d) {
        r.passed = false;
        r.first_bad_tick = sample.tick;
        std::ostringstream os;
        os << "|d| = " << std::abs(sample.ego_d) << " at s = " << sample.ego_s;
        r.detail = os.str();
        break;
      }
    }
    add(std::move(r));
  }

  if (criteria.require_final_stopped) {
    CriterionResult r;
    r.name = "final_stopped";
    r.passed = !trace.truth.empty() && trace.truth.back().ego.v <= 0.01;
    if (!r.passed) {
      std::ostringstream os;
      os << "final speed " << verdict.metrics.final_v;
      r.detail = os.str();
    }
    add(std::move(r));
  }

  return verdict;
}

Verdict evaluate_trace_file(const std::string& trace_path, const scenario::ScenarioSpec& spec) {
  return evaluate(summarize_trace(trace_path, spec), spec);
}

RunOutcome run_scenario(const scenario::ScenarioSpec& input_spec, const RunOptions& options) {
  scenario::ScenarioSpec spec = input_spec;
  if (options.seed_override.has_value()) spec.seed = *options.seed_override;
  if (options.duration_override.has_value()) spec.duration_s = *options.duration_override;

  const std::string trace_path =
      options.trace_path.empty() ? unique_trace_path(spec.name) : options.trace_path;

  const auto wall_start = std::chrono::steady_clock::now();
  {
    std::ofstream trace_out(trace_path, std::ios::trunc);
    if (!trace_out) throw InternalError("cannot open trace for writing: " + trace_path);

    msgbus::Bus bus;
    auto map = std::make_shared<const hdmap::MapModel>(spec.map.build());

    // Fixed registration order; it defines every delivery tie-break.
    stack::WorldSimNode worldsim_node(bus, spec);
    stack::PerceptionNode perception_node(bus, spec, map);
    stack::OddNode odd_node(bus, spec, map);
    stack::ModeManagerNode mode_node(bus, spec, map,
                                     {"worldsim", "perception", "odd", "planner", "control",
                                      "hmi"});
    stack::PlannerNode planner_node(bus, spec, map);
    stack::ControlNode control_node(bus, spec);
    stack::HmiNode hmi_node(bus, spec);
    stack::RecorderNode recorder(bus, trace_out);

    std::vector<stack::StackNode*> nodes = {&worldsim_node, &perception_node, &odd_node,
                                            &mode_node,     &planner_node,    &control_node,
                                            &hmi_node,      &recorder};

    const auto ticks = static_cast<Tick>(std::llround(spec.duration_s / scenario::kTickSeconds));
    for (Tick tick = 0; tick < ticks; ++tick) {
      bus.begin_tick(tick);
      for (auto* node : nodes) node->step(tick);
    }
    // One flush tick so the recorder drains the final tick's messages.
    bus.begin_tick(ticks);
    recorder.step(ticks);
    bus.close();

    if (!recorder.reconcile(bus)) {
      throw InternalError("trace recorder missed delivered envelopes");
    }
  }
  const auto wall_end = std::chrono::steady_clock::now();

  RunOutcome outcome;
  outcome.trace_path = trace_path;
  outcome.wall_seconds = std::chrono::duration<double>(wall_end - wall_start).count();
  outcome.verdict = evaluate_trace_file(trace_path, spec);
  return outcome;
}

std::string format_verdict(const Verdict& verdict) {
  std::ostringstream os;
  for (const auto& result : verdict.results) {
    os << (result.passed ? "[PASS] " : "[FAIL] ") << result.name;
    if (!result.passed) {
      if (result.first_bad_tick.has_value()) os << " (first offending tick " << *result.first_bad_tick << ")";
      if (!result.detail.empty()) os << ": " << result.detail;
    }
    os << "\n";
  }
  os << "metrics: min_clearance=";
  if (std::isfinite(verdict.metrics.min_clearance)) {
    os << verdict.metrics.min_clearance;
  } else {
    os << "n/a";
  }
  os << " max_abs_d=" << verdict.metrics.max_abs_d << " final_s=" << verdict.metrics.final_s
     << " final_v=" << verdict.metrics.final_v << "\n";
  os << "mode timeline:";
  for (const auto& sample : verdict.metrics.mode_timeline) {
    os << " [" << sample.tick << "] " << to_string(sample.mode);
  }
  os << "\n";
  return os.str();
}

}  // namespace drivestack::runner
