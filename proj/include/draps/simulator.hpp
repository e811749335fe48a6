#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <vector>

#include "draps/cluster.hpp"
#include "draps/events.hpp"
#include "draps/metrics.hpp"
#include "draps/migration.hpp"
#include "draps/registry.hpp"
#include "draps/scenario.hpp"

namespace draps {

/// Heartbeat byte schedule: fixed header plus a fixed cost per container
/// whose windowed usage is reported. Baseline heartbeats carry the header
/// only.
inline constexpr std::uint64_t kHeartbeatHeaderBytes = 64;
inline constexpr std::uint64_t kHeartbeatPerContainerBytes = 32;

struct ContainerUsage {
  ContainerId container;
  ResourceVector usage;
};

struct HeartbeatMsg {
  WorkerId worker;
  Tick tick = 0;
  /// Per-container mean usage since the previous heartbeat (enhanced mode only).
  std::vector<ContainerUsage> containers;
  ResourceVector available;
  std::uint64_t payload_size = 0;
};

std::uint64_t heartbeat_payload_size(bool enhanced, std::size_t reported_containers);

struct Summary {
  std::string scenario;
  SchedulerKind scheduler = SchedulerKind::Spread;
  std::uint64_t seed = 0;
  Tick ticks = 0;
  double final_nu = 0.0;
  double peak_nu = 0.0;
  Tick peak_nu_tick = 0;
  double peak_mem_util = 0.0;
  std::size_t placements = 0;
  std::size_t rejected = 0;
  /// Containers killed by memory-overload cascades.
  std::size_t kills = 0;
  std::size_t overload_events = 0;
  std::size_t alerts = 0;
  std::size_t migrations = 0;
  std::size_t migrate_aborts = 0;
  std::uint64_t heartbeat_bytes = 0;
  /// What the same heartbeats would have cost without per-container data.
  std::uint64_t baseline_heartbeat_bytes = 0;
  std::map<WorkerId, std::size_t> final_counts;
  std::map<WorkerId, std::size_t> peak_counts;
  std::map<WorkerId, double> peak_mem_by_worker;
};

struct SimulationResult {
  std::vector<UtilizationRecord> metrics;  // tick-major, workers ascending
  EventLog events;
  Summary summary;
  double tick_seconds = 1.0;
};

/// Deterministic tick loop. Each tick runs, in order:
///  1. demand replay for running containers (CPU, network and block I/O
///     over-demand are throttled to capacity; memory is not)
///  2. memory overload check and kill cascade
///  3. worker self-examination and alert emission (DRAPS only)
///  4. heartbeats, every heartbeat_period_ticks
///  5. alert handling and migrations (DRAPS only)
///  6. placement of the arrivals due this tick
///  7. metrics
class Simulation {
 public:
  explicit Simulation(ScenarioConfig config);

  /// Runs every remaining tick and returns the collected output.
  SimulationResult run();
  /// Runs one tick; returns false once max_ticks is reached.
  bool step();

  Tick now() const { return tick_; }
  const Cluster& cluster() const { return cluster_; }
  const KnownServiceRegistry& registry() const { return registry_; }
  const ResourceMap& availability_view() const { return availability_; }
  const EventLog& events() const { return events_; }
  const std::vector<UtilizationRecord>& metrics() const { return metrics_; }
  /// Demand replayed for each running container at the current tick.
  const UsageMap& demand() const { return demand_; }
  /// Demand after throttling, i.e. what the containers actually consume.
  const UsageMap& usage() const { return usage_; }
  const std::vector<HeartbeatMsg>& last_heartbeats() const { return last_heartbeats_; }

  /// Heartbeats the workers would send right now. Does not reset windows.
  std::vector<HeartbeatMsg> emit_heartbeats() const;

  Summary summary() const;

 private:
  bool enhanced() const { return config_.scheduler == SchedulerKind::Draps; }
  UsageMap usages_of(const WorkerNode& worker, const UsageMap& source) const;
  void replay_demand();
  void check_overloads();
  void examine_workers();
  void exchange_heartbeats();
  void handle_alerts();
  void place_arrivals();
  void record_metrics();
  void verify_conservation() const;
  /// Best current guess of one container's usage, for updating the
  /// manager's view between heartbeats.
  ResourceVector usage_estimate(const ServiceId& service, const ContainerId& container) const;
  void release(const ContainerId& container);

  ScenarioConfig config_;
  Cluster cluster_;
  KnownServiceRegistry registry_;
  ResourceMap availability_;
  ResourceMap reservations_;
  AlertThrottle throttle_;
  Rng rng_;
  EventLog events_;
  std::vector<UtilizationRecord> metrics_;
  std::vector<AlertMsg> pending_alerts_;
  std::vector<HeartbeatMsg> last_heartbeats_;

  UsageMap demand_;
  UsageMap usage_;
  struct Window {
    ResourceVector sum;
    std::size_t samples = 0;
  };
  std::map<ContainerId, Window> windows_;

  Tick tick_ = 0;
  std::size_t next_arrival_ = 0;

  // Summary accumulators.
  double peak_nu_ = 0.0;
  Tick peak_nu_tick_ = 0;
  double last_nu_ = 0.0;
  double peak_mem_ = 0.0;
  std::map<WorkerId, double> peak_mem_by_worker_;
  std::map<WorkerId, std::size_t> peak_counts_;
  std::size_t placements_ = 0;
  std::size_t rejected_ = 0;
  std::size_t kills_ = 0;
  std::size_t overloads_ = 0;
  std::size_t alerts_ = 0;
  std::size_t migrations_ = 0;
  std::size_t aborts_ = 0;
  std::uint64_t heartbeat_bytes_ = 0;
  std::uint64_t baseline_bytes_ = 0;
};

/// Convenience wrapper: validates, then runs the scenario to completion.
SimulationResult run(const ScenarioConfig& config);

/// Memory overload rule: true when the summed memory demand of the hosted
/// containers strictly exceeds the worker's memory capacity.
bool memory_overloaded(const WorkerNode& worker, const UsageMap& demand);

/// Applies the overload rule to one worker. On overload every hosted
/// container is killed (the worker itself stays alive and ready), a
/// worker_overload event and one kill event per container are logged, and the
/// killed ids are returned.
std::optional<std::vector<ContainerId>> overload_check(Cluster& cluster, const WorkerId& worker,
                                                       const UsageMap& demand, EventLog& log,
                                                       Tick tick);

inline constexpr const char* kMetricsCsvHeader =
    "tick_s,worker,mem_util,cpu_util,net_util,blk_util,worker_max,n_containers,alive";

void write_metrics_csv(std::ostream& out, const SimulationResult& result);
void write_summary_json(std::ostream& out, const Summary& summary);

}  // namespace draps
