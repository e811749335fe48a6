#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "draps/model.hpp"

namespace draps {

enum class EventType { Place, Reject, Alert, Migrate, MigrateAbort, Kill, WorkerOverload };

std::string_view to_string(EventType type);

struct Event {
  Tick tick = 0;
  EventType type = EventType::Place;
  std::string container;
  std::string service;
  std::string from_worker;
  std::string to_worker;
  std::string detail;
};

/// Append-only, tick-ordered event record.
class EventLog {
 public:
  void append(Event e);
  const std::vector<Event>& events() const { return events_; }
  std::size_t count(EventType type) const;

 private:
  std::vector<Event> events_;
};

inline constexpr const char* kEventsCsvHeader =
    "tick_s,event,container,service,from_worker,to_worker,detail";

void write_events_csv(std::ostream& out, const EventLog& log, double tick_seconds);

}  // namespace draps
