#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "draps/model.hpp"
#include "draps/schedulers.hpp"
#include "draps/trace.hpp"

namespace draps {

/// `count` containers of `service` arriving at `tick`, placed in schedule order.
struct Arrival {
  Tick tick = 0;
  ServiceId service;
  std::size_t count = 1;
};

struct ScenarioConfig {
  std::string name;
  std::vector<WorkerNode> workers;
  std::vector<ServiceSpec> services;
  std::vector<DemandTrace> traces;
  std::vector<Arrival> arrivals;

  SchedulerKind scheduler = SchedulerKind::Spread;
  FilterSet filters;
  std::uint64_t seed = 1;
  double tick_seconds = 1.0;
  Tick heartbeat_period_ticks = 5;
  /// Remaining-fraction threshold below which a worker raises an alert.
  double threshold = 0.10;
  /// Alert cooldown, in heartbeat periods.
  Tick alert_cooldown_periods = 3;
  std::size_t warmup_samples = 12;
  std::size_t window_samples = 6;
  Tick max_ticks = 1000;

  /// Throws Error(InvalidConfig) describing the first problem found.
  void validate() const;
  const DemandTrace& trace(const TraceId& id) const;
  std::size_t total_arrivals() const;
};

/// Reads a scenario JSON file. Trace files referenced by the scenario are
/// resolved relative to the scenario's directory. See the README for
/// the schema.
ScenarioConfig load_scenario(const std::filesystem::path& path);
ScenarioConfig parse_scenario(const std::string& json_text,
                              const std::filesystem::path& base_dir = ".");

/// Expands the arrival schedule to one container per slot and permutes the
/// service of each slot with a seeded shuffle; tick slots stay where they are.
void shuffle_arrivals(ScenarioConfig& config, std::uint64_t seed);

/// Sets every service's reservation to the component-wise peak of its trace.
void reserve_trace_peaks(ScenarioConfig& config);

}  // namespace draps
