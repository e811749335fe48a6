#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <variant>

#include "draps/resource.hpp"

namespace draps {

/// String identifier tagged by the entity it names, so worker ids and
/// container ids cannot be mixed up. Ordered lexicographically; that order is
/// the "ascending id" used by every tie-break.
template <class Tag>
struct Id {
  std::string value;

  Id() = default;
  Id(std::string v) : value(std::move(v)) {}
  Id(const char* v) : value(v) {}

  const std::string& str() const { return value; }
  friend auto operator<=>(const Id&, const Id&) = default;
  friend bool operator==(const Id&, const Id&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Id& id) { return os << id.value; }
};

using WorkerId = Id<struct WorkerTag>;
using ServiceId = Id<struct ServiceTag>;
using ContainerId = Id<struct ContainerTag>;
using TraceId = Id<struct TraceTag>;

using Tick = std::int64_t;

struct WorkerNode {
  WorkerId id;
  ResourceVector capacity;
  bool ready = true;
  std::set<std::string> labels;
  std::set<std::string> plugins;
  std::set<ContainerId> hosted;
  bool alive = true;
};

enum class ServiceMode { Replicated, Global };

struct ServiceSpec {
  ServiceId id;
  ServiceMode mode = ServiceMode::Replicated;
  TraceId trace_id;
  std::optional<ResourceVector> reservation;
  std::set<std::string> constraints;
  std::set<std::string> required_plugins;
};

enum class ContainerState { Pending, Running, Killed };

struct ContainerInstance {
  ContainerId id;
  ServiceId service;
  std::optional<WorkerId> worker;
  /// Ticks of the demand trace already consumed.
  std::int64_t phase_offset = 0;
  ContainerState state = ContainerState::Pending;
};

struct Rejected {
  std::string reason;
  friend bool operator==(const Rejected&, const Rejected&) = default;
};

struct PlacementDecision {
  ContainerId container;
  std::variant<WorkerId, Rejected> outcome;

  bool assigned() const { return std::holds_alternative<WorkerId>(outcome); }
  const WorkerId& worker() const { return std::get<WorkerId>(outcome); }
  const std::string& reason() const { return std::get<Rejected>(outcome).reason; }
};

}  // namespace draps
