#include "draps/events.hpp"

#include <algorithm>
#include <cstdio>

#include "draps/error.hpp"

namespace draps {

std::string_view to_string(EventType type) {
  switch (type) {
    case EventType::Place: return "place";
    case EventType::Reject: return "reject";
    case EventType::Alert: return "alert";
    case EventType::Migrate: return "migrate";
    case EventType::MigrateAbort: return "migrate_abort";
    case EventType::Kill: return "kill";
    case EventType::WorkerOverload: return "worker_overload";
  }
  return "?";
}

void EventLog::append(Event e) {
  if (!events_.empty() && e.tick < events_.back().tick) {
    throw Error(ErrorCode::InvalidConfig, "events must be appended in tick order");
  }
  events_.push_back(std::move(e));
}

std::size_t EventLog::count(EventType type) const {
  return static_cast<std::size_t>(std::count_if(
      events_.begin(), events_.end(), [type](const Event& e) { return e.type == type; }));
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_events_csv(std::ostream& out, const EventLog& log, double tick_seconds) {
  out << kEventsCsvHeader << '\n';
  char buf[32];
  for (const auto& e : log.events()) {
    std::snprintf(buf, sizeof buf, "%g", static_cast<double>(e.tick) * tick_seconds);
    out << buf << ',' << to_string(e.type) << ',' << csv_field(e.container) << ','
        << csv_field(e.service) << ',' << csv_field(e.from_worker) << ','
        << csv_field(e.to_worker) << ',' << csv_field(e.detail) << '\n';
  }
}

}  // namespace draps
