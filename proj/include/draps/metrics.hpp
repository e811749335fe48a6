#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "draps/model.hpp"
#include "draps/resource.hpp"

namespace draps {

using UsageMap = std::map<ContainerId, ResourceVector>;

struct UtilizationRecord {
  Tick tick = 0;
  WorkerId worker;
  RatioVector ratios;
  double worker_max = 0.0;
  std::size_t n_containers = 0;
  bool alive = true;
};

/// Per-kind sum of hosted usages over the worker's capacity. Throws
/// Error(NotHosted) if `usages` holds a container the worker does not host.
RatioVector utilization(const WorkerNode& worker, const UsageMap& usages);

UtilizationRecord make_record(Tick tick, const WorkerNode& worker, const UsageMap& usages);

/// Highest ratio over all alive workers and all kinds. Throws
/// Error(EmptyInput) when no record is alive.
double cluster_nu(std::span<const UtilizationRecord> records);

struct Violation {
  enum class Kind { Unplaced, MultiplyPlaced, OverCapacity };
  Kind kind;
  ContainerId container;  // Unplaced / MultiplyPlaced
  WorkerId worker;        // OverCapacity
  ResourceKind resource = ResourceKind::Memory;
  double ratio = 0.0;
};

/// Checks that every running container sits on exactly one worker and that
/// no worker's ratio exceeds 1 in any kind. Usages of containers missing
/// from `usages` count as zero.
std::vector<Violation> check_constraints(std::span<const ContainerInstance> containers,
                                         std::span<const WorkerNode> workers,
                                         const UsageMap& usages);

}  // namespace draps
