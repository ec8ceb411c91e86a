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

#include "drivestack/msgbus.hpp"

namespace drivestack::msgbus {

bool topic_name_valid(std::string_view name) {
  if (name.size() < 2 || name.front() != '/') return false;
  bool prev_slash = false;
  for (char c : name) {
    if (c == '/') {
      if (prev_slash) return false;  // empty segment
      prev_slash = true;
      continue;
    }
    prev_slash = false;
    if (c <= ' ' || c > '~') return false;
  }
  return !prev_slash;  // no trailing slash
}

std::size_t Bus::resolve_topic(std::string_view name, std::type_index type, RenderFn render) {
  if (!topic_name_valid(name)) {
    throw InvalidNameError("invalid topic name: \"" + std::string(name) + "\"");
  }
  auto it = topic_index_.find(std::string(name));
  if (it != topic_index_.end()) {
    Topic& topic = topics_[it->second];
    if (topic.type != type) {
      throw TypeConflictError("topic \"" + std::string(name) +
                              "\" already fixed to a different message type");
    }
    return it->second;
  }
  topics_.push_back(Topic{.name = std::string(name),
                          .type = type,
                          .render = render,
                          .publisher_count = 0,
                          .publish_count = 0});
  topic_index_.emplace(std::string(name), topics_.size() - 1);
  return topics_.size() - 1;
}

void Bus::enqueue(std::size_t topic, std::uint64_t sequence, std::size_t publisher_order,
                  std::shared_ptr<const void> payload) {
  topics_[topic].publish_count += 1;
  detail::PendingEnvelope env{
      .publish_tick = current_tick_,
      .sequence = sequence,
      .publisher_order = publisher_order,
      .topic_order = topic,
      .payload = std::move(payload),
  };
  for (auto& sub : subscriptions_) {
    if (sub.tap || sub.topic == topic) sub.pending.push_back(env);
  }
}

std::vector<detail::PendingEnvelope> Bus::take_deliverable(Subscription& sub) {
  auto split = std::stable_partition(
      sub.pending.begin(), sub.pending.end(),
      [now = current_tick_](const detail::PendingEnvelope& e) { return e.publish_tick >= now; });
  std::vector<detail::PendingEnvelope> deliverable(split, sub.pending.end());
  sub.pending.erase(split, sub.pending.end());

  std::stable_sort(deliverable.begin(), deliverable.end(), detail::delivery_before);
  // Keep-last-N: only the most recent `depth` of the deliverable backlog
  // survive; in-flight messages of the current tick do not count yet.
  const std::size_t depth = static_cast<std::size_t>(sub.qos.depth);
  if (deliverable.size() > depth) {
    deliverable.erase(deliverable.begin(),
                      deliverable.begin() + static_cast<std::ptrdiff_t>(deliverable.size() - depth));
  }
  return deliverable;
}

TapSubscriber Bus::subscribe_all(QosPolicy qos) {
  if (closed_) throw BusClosedError("bus is closed");
  subscriptions_.push_back(Subscription{.topic = 0, .qos = qos, .tap = true, .pending = {}});
  return TapSubscriber(this, subscriptions_.size() - 1);
}

std::vector<RawEnvelope> TapSubscriber::drain() {
  if (!bus_) throw BusError("tap not bound to a bus");
  auto& sub = bus_->subscriptions_[subscription_];
  auto delivered = bus_->take_deliverable(sub);
  // Trace order within a tick follows topic registration order.
  std::stable_sort(delivered.begin(), delivered.end(),
                   [](const detail::PendingEnvelope& a, const detail::PendingEnvelope& b) {
                     if (a.publish_tick != b.publish_tick) return a.publish_tick < b.publish_tick;
                     if (a.topic_order != b.topic_order) return a.topic_order < b.topic_order;
                     return detail::delivery_before(a, b);
                   });
  std::vector<RawEnvelope> out;
  out.reserve(delivered.size());
  for (auto& env : delivered) {
    const auto& topic = bus_->topics_[env.topic_order];
    out.push_back(RawEnvelope{
        .topic = topic.name,
        .topic_order = env.topic_order,
        .publish_tick = env.publish_tick,
        .sequence = env.sequence,
        .publisher_order = env.publisher_order,
        .rendered = topic.render ? topic.render(env.payload.get()) : std::string("{}"),
    });
  }
  return out;
}

std::uint64_t Bus::publish_count(std::string_view topic) const {
  auto it = topic_index_.find(std::string(topic));
  if (it == topic_index_.end()) return 0;
  return topics_[it->second].publish_count;
}

std::vector<std::string> Bus::topic_names() const {
  std::vector<std::string> names;
  names.reserve(topics_.size());
  for (const auto& t : topics_) names.push_back(t.name);
  return names;
}

}  // namespace drivestack::msgbus
