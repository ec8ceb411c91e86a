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

#include <algorithm>
#include <any>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <typeindex>
#include <unordered_map>
#include <vector>

namespace drivestack::msgbus {

using Tick = std::int64_t;

enum class Reliability { reliable, best_effort };

/// Keep-last-N queue policy per subscription. best_effort is accepted but
/// treated as reliable; eviction beyond `depth` is the only drop mechanism.
struct QosPolicy {
  int depth = 1;
  Reliability reliability = Reliability::reliable;
};

class BusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class InvalidNameError : public BusError {
 public:
  using BusError::BusError;
};
class TypeConflictError : public BusError {
 public:
  using BusError::BusError;
};
class BusClosedError : public BusError {
 public:
  using BusError::BusError;
};
class UnknownServiceError : public BusError {
 public:
  using BusError::BusError;
};
class DuplicateServiceError : public BusError {
 public:
  using BusError::BusError;
};

/// Valid topic names are non-empty slash-separated paths, e.g. "/ego/state".
bool topic_name_valid(std::string_view name);

template <typename T>
struct Envelope {
  std::string topic;
  Tick publish_tick = 0;
  std::uint64_t sequence = 0;
  std::shared_ptr<const T> message;

  const T& payload() const { return *message; }
};

/// Type-erased envelope as seen by a tap subscriber (the trace recorder).
struct RawEnvelope {
  std::string topic;
  std::size_t topic_order = 0;  // topic registration order
  Tick publish_tick = 0;
  std::uint64_t sequence = 0;
  std::size_t publisher_order = 0;
  std::string rendered;  // payload rendered as structured text, "{}" if the
                         // message type has no render_payload overload
};

namespace detail {

template <typename T>
concept Renderable = requires(const T& t) {
  { render_payload(t) } -> std::convertible_to<std::string>;
};

struct PendingEnvelope {
  Tick publish_tick = 0;
  std::uint64_t sequence = 0;
  std::size_t publisher_order = 0;
  std::size_t topic_order = 0;
  std::shared_ptr<const void> payload;
};

/// Delivery order: publish tick, then publisher registration order within the
/// topic, then per-publisher sequence. Pure function of the publish schedule.
inline bool delivery_before(const PendingEnvelope& a, const PendingEnvelope& b) {
  if (a.publish_tick != b.publish_tick) return a.publish_tick < b.publish_tick;
  if (a.publisher_order != b.publisher_order) return a.publisher_order < b.publisher_order;
  return a.sequence < b.sequence;
}

}  // namespace detail

class Bus;

template <typename T>
class Publisher {
 public:
  Publisher() = default;
  void publish(T message);
  explicit operator bool() const { return bus_ != nullptr; }

 private:
  friend class Bus;
  Publisher(Bus* bus, std::size_t topic, std::size_t publisher)
      : bus_(bus), topic_(topic), publisher_(publisher) {}
  Bus* bus_ = nullptr;
  std::size_t topic_ = 0;
  std::size_t publisher_ = 0;
};

template <typename T>
class Subscriber {
 public:
  Subscriber() = default;
  /// Returns every deliverable envelope (publish_tick < current tick) in
  /// delivery order and empties the queue. Keep-last-`depth` eviction is
  /// applied to the deliverable backlog: only the most recent `depth` survive.
  std::vector<Envelope<T>> drain();
  explicit operator bool() const { return bus_ != nullptr; }

 private:
  friend class Bus;
  Subscriber(Bus* bus, std::size_t subscription) : bus_(bus), subscription_(subscription) {}
  Bus* bus_ = nullptr;
  std::size_t subscription_ = 0;
};

/// Subscribes to every topic, including ones advertised later.
class TapSubscriber {
 public:
  TapSubscriber() = default;
  std::vector<RawEnvelope> drain();
  explicit operator bool() const { return bus_ != nullptr; }

 private:
  friend class Bus;
  TapSubscriber(Bus* bus, std::size_t subscription) : bus_(bus), subscription_(subscription) {}
  Bus* bus_ = nullptr;
  std::size_t subscription_ = 0;
};

/// In-process typed publish-subscribe bus with synchronous request-response
/// services and deterministic delivery.
///
/// Delivery has a one-tick latency: a message published at tick t becomes
/// drainable at tick t+1. This keeps dataflow independent of node execution
/// order within a tick. Single-threaded; the scheduler owns the bus and
/// advances it with begin_tick().
class Bus {
 public:
  Bus() = default;
  Bus(const Bus&) = delete;
  Bus& operator=(const Bus&) = delete;

  template <typename T>
  Publisher<T> advertise(std::string_view topic, QosPolicy qos = {});

  template <typename T>
  Subscriber<T> subscribe(std::string_view topic, QosPolicy qos = {});

  TapSubscriber subscribe_all(QosPolicy qos = {.depth = 1 << 30});

  template <typename Req, typename Res>
  void register_service(std::string_view name, std::function<Res(const Req&)> handler);

  /// Executes the handler synchronously within the caller's slot.
  template <typename Res, typename Req>
  Res call_service(std::string_view name, const Req& request) const;

  bool has_service(std::string_view name) const {
    return services_.find(std::string(name)) != services_.end();
  }

  void begin_tick(Tick tick) { current_tick_ = tick; }
  Tick current_tick() const { return current_tick_; }

  void close() { closed_ = true; }
  bool closed() const { return closed_; }

  /// Total messages published on a topic since creation; used by the trace
  /// recorder for count reconciliation.
  std::uint64_t publish_count(std::string_view topic) const;

  /// Topic names in registration order.
  std::vector<std::string> topic_names() const;

 private:
  template <typename T>
  friend class Publisher;
  template <typename T>
  friend class Subscriber;
  friend class TapSubscriber;

  using RenderFn = std::string (*)(const void*);

  struct Topic {
    std::string name;
    std::type_index type{typeid(void)};
    RenderFn render = nullptr;
    std::size_t publisher_count = 0;
    std::uint64_t publish_count = 0;
  };

  struct Subscription {
    std::size_t topic = 0;  // ignored for taps
    QosPolicy qos;
    bool tap = false;
    std::vector<detail::PendingEnvelope> pending;
  };

  struct Service {
    std::type_index request_type{typeid(void)};
    std::type_index response_type{typeid(void)};
    std::function<std::any(const std::any&)> handler;
  };

  std::size_t resolve_topic(std::string_view name, std::type_index type, RenderFn render);
  void enqueue(std::size_t topic, std::uint64_t sequence, std::size_t publisher_order,
               std::shared_ptr<const void> payload);
  /// Removes and returns deliverable envelopes in delivery order, applying
  /// keep-last eviction to the deliverable backlog.
  std::vector<detail::PendingEnvelope> take_deliverable(Subscription& sub);

  std::vector<Topic> topics_;
  std::unordered_map<std::string, std::size_t> topic_index_;
  std::vector<Subscription> subscriptions_;
  std::vector<std::uint64_t> publisher_sequences_;  // per publisher handle
  std::unordered_map<std::string, Service> services_;
  Tick current_tick_ = 0;
  bool closed_ = false;
};

// --- implementation ---------------------------------------------------------

template <typename T>
Publisher<T> Bus::advertise(std::string_view topic, QosPolicy qos) {
  if (closed_) throw BusClosedError("bus is closed");
  if (qos.depth < 1) throw BusError("qos depth must be >= 1");
  RenderFn render = nullptr;
  if constexpr (detail::Renderable<T>) {
    render = +[](const void* p) -> std::string {
      return render_payload(*static_cast<const T*>(p));
    };
  }
  const std::size_t t = resolve_topic(topic, std::type_index(typeid(T)), render);
  topics_[t].publisher_count += 1;
  publisher_sequences_.push_back(0);
  return Publisher<T>(this, t, publisher_sequences_.size() - 1);
}

template <typename T>
Subscriber<T> Bus::subscribe(std::string_view topic, QosPolicy qos) {
  if (closed_) throw BusClosedError("bus is closed");
  if (qos.depth < 1) throw BusError("qos depth must be >= 1");
  RenderFn render = nullptr;
  if constexpr (detail::Renderable<T>) {
    render = +[](const void* p) -> std::string {
      return render_payload(*static_cast<const T*>(p));
    };
  }
  const std::size_t t = resolve_topic(topic, std::type_index(typeid(T)), render);
  subscriptions_.push_back(Subscription{.topic = t, .qos = qos, .tap = false, .pending = {}});
  return Subscriber<T>(this, subscriptions_.size() - 1);
}

template <typename T>
void Publisher<T>::publish(T message) {
  if (!bus_) throw BusError("publisher not bound to a bus");
  if (bus_->closed()) throw BusClosedError("bus is closed");
  auto& seq = bus_->publisher_sequences_[publisher_];
  seq += 1;
  // publisher_order within the topic: recover from handle creation order.
  // Publishers are registered per topic; store order explicitly at enqueue.
  bus_->enqueue(topic_, seq, publisher_, std::make_shared<const T>(std::move(message)));
}

template <typename T>
std::vector<Envelope<T>> Subscriber<T>::drain() {
  if (!bus_) throw BusError("subscriber not bound to a bus");
  auto& sub = bus_->subscriptions_[subscription_];
  auto delivered = bus_->take_deliverable(sub);
  std::vector<Envelope<T>> out;
  out.reserve(delivered.size());
  const std::string& name = bus_->topics_[sub.topic].name;
  for (auto& env : delivered) {
    out.push_back(Envelope<T>{
        .topic = name,
        .publish_tick = env.publish_tick,
        .sequence = env.sequence,
        .message = std::static_pointer_cast<const T>(env.payload),
    });
  }
  return out;
}

template <typename Req, typename Res>
void Bus::register_service(std::string_view name, std::function<Res(const Req&)> handler) {
  if (name.empty()) throw InvalidNameError("service name must be non-empty");
  auto [it, inserted] = services_.try_emplace(std::string(name));
  if (!inserted) throw DuplicateServiceError("service already registered: " + std::string(name));
  it->second.request_type = std::type_index(typeid(Req));
  it->second.response_type = std::type_index(typeid(Res));
  it->second.handler = [fn = std::move(handler)](const std::any& req) -> std::any {
    return fn(std::any_cast<const Req&>(req));
  };
}

template <typename Res, typename Req>
Res Bus::call_service(std::string_view name, const Req& request) const {
  auto it = services_.find(std::string(name));
  if (it == services_.end()) throw UnknownServiceError("unknown service: " + std::string(name));
  const Service& svc = it->second;
  if (svc.request_type != std::type_index(typeid(Req)) ||
      svc.response_type != std::type_index(typeid(Res))) {
    throw TypeConflictError("service type mismatch: " + std::string(name));
  }
  std::any res = svc.handler(std::any(request));
  return std::any_cast<Res>(std::move(res));
}

}  // namespace drivestack::msgbus
