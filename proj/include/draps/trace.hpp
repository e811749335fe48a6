#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "draps/model.hpp"
#include "draps/resource.hpp"

namespace draps {

/// A per-container demand profile sampled at a fixed interval. Queries past
/// the last sample repeat the final sample.
class DemandTrace {
 public:
  DemandTrace(TraceId id, double sample_interval_s, std::vector<ResourceVector> samples);

  const TraceId& id() const { return id_; }
  double sample_interval() const { return sample_interval_; }
  const std::vector<ResourceVector>& samples() const { return samples_; }

  /// Demand at `elapsed_s` seconds into the trace.
  const ResourceVector& at_seconds(double elapsed_s) const;
  /// Demand at the given phase offset, with `tick_seconds` seconds per tick.
  const ResourceVector& at_tick(std::int64_t phase_offset, double tick_seconds) const {
    return at_seconds(static_cast<double>(phase_offset) * tick_seconds);
  }
  /// Component-wise maximum over all samples.
  ResourceVector peak() const;

 private:
  TraceId id_;
  double sample_interval_;
  std::vector<ResourceVector> samples_;
};

/// One parsed row of a docker-stats style export, after counters have been
/// turned into rates.
struct UsageSample {
  double tick_s = 0.0;
  ContainerId container;
  ServiceId service;
  ResourceVector usage;
};

/// Rows grouped per container in file order, counters differenced.
struct TraceTable {
  std::vector<UsageSample> samples;
  std::vector<ServiceId> services;  // first-appearance order
};

inline constexpr const char* kTraceCsvHeader =
    "tick_s,container,service,cpu_pct,mem_bytes,net_rx_bytes,net_tx_bytes,"
    "blk_read_bytes,blk_write_bytes";

/// Parses the trace CSV. cpu = cpu_pct / 100; memory = mem_bytes; network and
/// block I/O are first differences of the cumulative counters over the tick
/// gap. A container's first row has no predecessor, so its rates are 0.
/// Throws Error(ParseError) naming the 1-based line on malformed input.
TraceTable read_trace_csv(std::istream& in);
TraceTable read_trace_csv(const std::filesystem::path& path);

/// Builds one DemandTrace per service from a table by averaging the
/// per-container rates at each distinct tick. The sample interval is the
/// smallest positive tick gap.
DemandTrace trace_for_service(const TraceTable& table, const ServiceId& service,
                              const TraceId& trace_id);

}  // namespace draps
