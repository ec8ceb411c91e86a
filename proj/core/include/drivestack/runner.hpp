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
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "drivestack/modes.hpp"
#include "drivestack/perception.hpp"
#include "drivestack/scenario.hpp"
#include "drivestack/vehicle.hpp"
#include "drivestack/worldsim.hpp"

namespace drivestack::runner {

using Tick = std::int64_t;

class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Typed views over the trace streams the verdict evaluation needs.
struct TruthSample {
  Tick tick = 0;
  VehicleState ego;
  double ego_s = 0.0;
  double ego_d = 0.0;
  worldsim::Environment env;
  bool had_command = false;
  CommandSource applied_source = CommandSource::controller;
  std::vector<worldsim::Obstacle> obstacles;
};

struct ModeSample {
  Tick tick = 0;
  DriveMode mode = DriveMode::MANUAL;
};

struct ZoneEventSample {
  Tick tick = 0;
  perception::ZoneStatus status = perception::ZoneStatus::entered_detection;
  double s_start = 0.0;
  double s_end = 0.0;
};

struct TraceSummary {
  std::vector<TruthSample> truth;
  std::vector<ModeSample> modes;         // one per tick
  std::vector<ModeSample> mode_changes;  // compressed timeline
  std::vector<ZoneEventSample> zone_events;
};

/// Parses a line-delimited trace back into typed streams; ego Frenet
/// coordinates are recovered through the scenario's map.
TraceSummary summarize_trace(const std::string& trace_path, const scenario::ScenarioSpec& spec);

struct CriterionResult {
  std::string name;
  bool passed = true;
  std::optional<Tick> first_bad_tick;
  std::string detail;
};

struct RunMetrics {
  double min_clearance = std::numeric_limits<double>::infinity();
  double max_abs_d = 0.0;
  double final_s = 0.0;
  double final_v = 0.0;
  std::vector<ModeSample> mode_timeline;
};

struct Verdict {
  bool passed = true;
  std::vector<CriterionResult> results;
  RunMetrics metrics;
};

/// Pure function of (trace, criteria): each criterion is checked
/// independently and failures carry the first offending tick.
Verdict evaluate(const TraceSummary& trace, const scenario::ScenarioSpec& spec);

Verdict evaluate_trace_file(const std::string& trace_path, const scenario::ScenarioSpec& spec);

struct RunOptions {
  std::string trace_path;  // empty: a unique file under the system temp dir
  std::optional<std::uint64_t> seed_override;
  std::optional<double> duration_override;
};

struct RunOutcome {
  Verdict verdict;
  std::string trace_path;
  double wall_seconds = 0.0;
};

/// Builds the bus, registers the nodes in the fixed order (worldsim,
/// perception, odd, mode_manager, planner, control, hmi, recorder) and ticks
/// the stack to the scenario duration, then evaluates the pass criteria on
/// the written trace. (spec, seed) fully determines the trace bytes.
RunOutcome run_scenario(const scenario::ScenarioSpec& spec, const RunOptions& options = {});

/// One line per criterion plus a metrics block, as printed by the CLI.
std::string format_verdict(const Verdict& verdict);

}  // namespace drivestack::runner
