#pragma once

#include <string>

#include "draps/model.hpp"
#include "draps/resource.hpp"
#include "draps/scenario.hpp"

namespace draps::testing {

inline ResourceVector mem_gib(double gib) { return {gib * kGiB, 0.0, 0.0, 0.0}; }

inline WorkerNode make_worker(const std::string& id, double mem_gib_cap, double cores = 4.0,
                              double net = 1.25e8, double blk = 1.5e8) {
  WorkerNode w;
  w.id = WorkerId(id);
  w.capacity = {mem_gib_cap * kGiB, cores, net, blk};
  return w;
}

inline ServiceSpec make_service(const std::string& id, const std::string& trace = "") {
  ServiceSpec s;
  s.id = ServiceId(id);
  s.trace_id = TraceId(trace.empty() ? id : trace);
  return s;
}

/// Scenario with the given workers and one constant-demand service "svc".
inline ScenarioConfig constant_scenario(std::vector<WorkerNode> workers, ResourceVector demand,
                                        Tick max_ticks = 20) {
  ScenarioConfig cfg;
  cfg.name = "test";
  cfg.workers = std::move(workers);
  cfg.traces.emplace_back(TraceId("flat"), 1.0, std::vector<ResourceVector>{demand});
  cfg.services.push_back(make_service("svc", "flat"));
  cfg.max_ticks = max_ticks;
  return cfg;
}

}  // namespace draps::testing
