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

#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "drivestack/control.hpp"
#include "drivestack/hmi.hpp"
#include "drivestack/messages.hpp"
#include "drivestack/mode_manager.hpp"
#include "drivestack/msgbus.hpp"
#include "drivestack/planner.hpp"
#include "drivestack/scenario.hpp"

namespace drivestack::stack {

using msgbus::Tick;

/// A scheduled node; the runner steps every node once per tick in the fixed
/// registration order.
class StackNode {
 public:
  virtual ~StackNode() = default;
  virtual std::string_view name() const = 0;
  virtual void step(Tick tick) = 0;
};

/// Ground-truth world plus the actuation stage: drains /control/cmd
/// (override wins over the controller), saturates and rate-limits it, steps
/// the kinematic bicycle and publishes /ego/state and /world/truth.
class WorldSimNode final : public StackNode {
 public:
  WorldSimNode(msgbus::Bus& bus, const scenario::ScenarioSpec& spec);
  std::string_view name() const override { return "worldsim"; }
  void step(Tick tick) override;

 private:
  worldsim::World world_;
  std::vector<scenario::EnvironmentKeyframe> timeline_;
  double prev_a_ = 0.0;
  double prev_delta_ = 0.0;
  msgbus::Subscriber<ControlCommand> cmd_sub_;
  msgbus::Publisher<VehicleState> ego_pub_;
  msgbus::Publisher<msgs::WorldTruth> truth_pub_;
  msgbus::Publisher<msgs::Heartbeat> heartbeat_pub_;
};

/// Sensing + perception: ground-truth detections with range/FOV/weather
/// gating and the construction-zone classifier.
class PerceptionNode final : public StackNode {
 public:
  PerceptionNode(msgbus::Bus& bus, const scenario::ScenarioSpec& spec,
                 std::shared_ptr<const hdmap::MapModel> map);
  std::string_view name() const override { return "perception"; }
  void step(Tick tick) override;

 private:
  perception::SensorConfig config_;
  perception::ZoneClassifier classifier_;
  std::shared_ptr<const hdmap::MapModel> map_;
  std::mt19937_64 noise_rng_;
  std::map<std::string, Tick> first_seen_;
  std::vector<msgs::DetectedObjectList> latency_queue_;
  msgbus::Subscriber<msgs::WorldTruth> truth_sub_;
  msgbus::Publisher<msgs::DetectedObjectList> objects_pub_;
  msgbus::Publisher<perception::ConstructionZoneEvent> cz_pub_;
  msgbus::Publisher<msgs::Heartbeat> heartbeat_pub_;
};

/// Evaluates every registered ODD definition each tick.
class OddNode final : public StackNode {
 public:
  OddNode(msgbus::Bus& bus, const scenario::ScenarioSpec& spec,
          std::shared_ptr<const hdmap::MapModel> map);
  std::string_view name() const override { return "odd"; }
  void step(Tick tick) override;

 private:
  std::vector<odd::OddDefinition> definitions_;
  std::shared_ptr<const hdmap::MapModel> map_;
  bool cz_active_ = false;
  std::optional<worldsim::Environment> env_;
  std::optional<VehicleState> ego_;
  msgbus::Subscriber<msgs::WorldTruth> truth_sub_;
  msgbus::Subscriber<VehicleState> ego_sub_;
  msgbus::Subscriber<perception::ConstructionZoneEvent> cz_sub_;
  msgbus::Publisher<msgs::OddStatusList> status_pub_;
  msgbus::Publisher<msgs::Heartbeat> heartbeat_pub_;
};

/// The mode state machine plus its safety watchdogs (TTC, health, takeover
/// timer). Owns the emergency-brake override.
class ModeManagerNode final : public StackNode {
 public:
  ModeManagerNode(msgbus::Bus& bus, const scenario::ScenarioSpec& spec,
                  std::shared_ptr<const hdmap::MapModel> map,
                  std::vector<std::string> monitored_nodes);
  std::string_view name() const override { return "mode_manager"; }
  void step(Tick tick) override;

  DriveMode mode() const { return mode_; }

 private:
  void apply_events(std::vector<mode_manager::ModeEvent> events, Tick tick);

  scenario::ModeManagerConfig config_;
  VehicleParams vehicle_params_;
  std::shared_ptr<const hdmap::MapModel> map_;
  msgbus::Bus& bus_;

  DriveMode mode_ = DriveMode::MANUAL;
  std::map<DriveMode, bool> odd_satisfied_;
  std::map<DriveMode, bool> odd_satisfied_prev_;
  std::map<DriveMode, std::vector<std::string>> odd_violations_;
  bool cz_active_ = false;
  bool planner_nominal_ = true;
  std::map<std::string, bool> node_nominal_;
  Tick takeover_ticks_ = 0;
  bool driver_acked_in_emergency_ = false;
  std::optional<VehicleState> ego_;
  std::vector<perception::DetectedObject> objects_;
  mode_manager::HealthMonitor health_;

  msgbus::Subscriber<msgs::OddStatusList> odd_sub_;
  msgbus::Subscriber<perception::ConstructionZoneEvent> cz_sub_;
  msgbus::Subscriber<msgs::DetectedObjectList> objects_sub_;
  msgbus::Subscriber<VehicleState> ego_sub_;
  msgbus::Subscriber<hmi::DriverCommand> driver_sub_;
  std::vector<msgbus::Subscriber<msgs::Heartbeat>> health_subs_;
  msgbus::Publisher<msgs::ActiveMode> mode_pub_;
  msgbus::Publisher<ControlCommand> override_pub_;
  msgbus::Publisher<hmi::TakeoverRequest> request_pub_;
  msgbus::Publisher<msgs::Heartbeat> heartbeat_pub_;
};

/// Drive planning: follows the global path in AUTOPILOT and runs the Frenet
/// sampler in CZA; a takeover request keeps the last profile active until the
/// driver or the emergency brake takes over.
class PlannerNode final : public StackNode {
 public:
  PlannerNode(msgbus::Bus& bus, const scenario::ScenarioSpec& spec,
              std::shared_ptr<const hdmap::MapModel> map);
  std::string_view name() const override { return "planner"; }
  void step(Tick tick) override;

 private:
  void plan(Tick tick);

  scenario::PlannerProfiles profiles_;
  VehicleParams vehicle_params_;
  std::shared_ptr<const hdmap::MapModel> map_;

  DriveMode mode_view_ = DriveMode::MANUAL;
  DriveMode profile_mode_ = DriveMode::AUTOPILOT;
  bool force_replan_ = false;
  Tick last_plan_tick_ = -1;
  bool nominal_ = true;
  std::optional<VehicleState> ego_;
  std::vector<perception::DetectedObject> objects_;

  msgbus::Subscriber<msgs::DetectedObjectList> objects_sub_;
  msgbus::Subscriber<VehicleState> ego_sub_;
  msgbus::Subscriber<msgs::ActiveMode> mode_sub_;
  msgbus::Publisher<Trajectory> trajectory_pub_;
  msgbus::Publisher<msgs::Heartbeat> heartbeat_pub_;
};

/// Motion control: PID speed tracking plus Stanley steering against the
/// active trajectory; silent outside automated modes.
class ControlNode final : public StackNode {
 public:
  ControlNode(msgbus::Bus& bus, const scenario::ScenarioSpec& spec);
  std::string_view name() const override { return "control"; }
  void step(Tick tick) override;

 private:
  control::ControllerConfig config_;
  VehicleParams vehicle_params_;

  DriveMode mode_view_ = DriveMode::MANUAL;
  bool was_automated_ = false;
  control::PidState pid_;
  std::optional<Trajectory> trajectory_;
  std::optional<VehicleState> ego_;
  bool nominal_ = true;

  msgbus::Subscriber<Trajectory> trajectory_sub_;
  msgbus::Subscriber<VehicleState> ego_sub_;
  msgbus::Subscriber<msgs::ActiveMode> mode_sub_;
  msgbus::Publisher<ControlCommand> cmd_pub_;
  msgbus::Publisher<msgs::Heartbeat> heartbeat_pub_;
};

/// HMI surface plus the scripted driver.
class HmiNode final : public StackNode {
 public:
  HmiNode(msgbus::Bus& bus, const scenario::ScenarioSpec& spec);
  std::string_view name() const override { return "hmi"; }
  void step(Tick tick) override;

 private:
  hmi::Hmi hmi_;
  msgbus::Subscriber<msgs::ActiveMode> mode_sub_;
  msgbus::Subscriber<hmi::TakeoverRequest> request_sub_;
  msgbus::Publisher<hmi::DriverCommand> driver_pub_;
  msgbus::Publisher<hmi::HmiMessage> display_pub_;
  msgbus::Publisher<msgs::Heartbeat> heartbeat_pub_;
};

/// Taps every topic and appends one structured-text record per delivered
/// envelope, in (tick, topic registration order, sequence) order.
class RecorderNode final : public StackNode {
 public:
  RecorderNode(msgbus::Bus& bus, std::ostream& out);
  std::string_view name() const override { return "recorder"; }
  void step(Tick tick) override;

  /// Verifies the recorder saw every published envelope.
  bool reconcile(const msgbus::Bus& bus) const;
  std::uint64_t recorded_count() const { return total_records_; }

 private:
  msgbus::TapSubscriber tap_;
  std::ostream& out_;
  std::map<std::string, std::uint64_t> per_topic_counts_;
  std::uint64_t total_records_ = 0;
};

}  // namespace drivestack::stack
