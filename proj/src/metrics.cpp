#include "draps/metrics.hpp"

#include <algorithm>

#include "draps/error.hpp"

namespace draps {

RatioVector utilization(const WorkerNode& worker, const UsageMap& usages) {
  ResourceVector load;
  for (const auto& [id, usage] : usages) {
    if (!worker.hosted.count(id)) {
      throw Error(ErrorCode::NotHosted,
                  "container " + id.str() + " is not hosted by worker " + worker.id.str());
    }
    load += usage;
  }
  return vector_normalize(load, worker.capacity);
}

UtilizationRecord make_record(Tick tick, const WorkerNode& worker, const UsageMap& usages) {
  UtilizationRecord r;
  r.tick = tick;
  r.worker = worker.id;
  r.ratios = utilization(worker, usages);
  r.worker_max = r.ratios.max();
  r.n_containers = worker.hosted.size();
  r.alive = worker.alive;
  return r;
}

double cluster_nu(std::span<const UtilizationRecord> records) {
  bool any = false;
  double nu = 0.0;
  for (const auto& r : records) {
    if (!r.alive) continue;
    nu = any ? std::max(nu, r.ratios.max()) : r.ratios.max();
    any = true;
  }
  if (!any) throw Error(ErrorCode::EmptyInput, "cluster_nu needs at least one alive worker");
  return nu;
}

std::vector<Violation> check_constraints(std::span<const ContainerInstance> containers,
                                         std::span<const WorkerNode> workers,
                                         const UsageMap& usages) {
  std::vector<Violation> out;
  for (const auto& c : containers) {
    if (c.state != ContainerState::Running) continue;
    auto hosts = std::count_if(workers.begin(), workers.end(),
                               [&](const WorkerNode& w) { return w.hosted.count(c.id) != 0; });
    if (hosts == 0 || !c.worker) {
      out.push_back({Violation::Kind::Unplaced, c.id, {}, ResourceKind::Memory, 0.0});
    } else if (hosts > 1) {
      out.push_back({Violation::Kind::MultiplyPlaced, c.id, {}, ResourceKind::Memory, 0.0});
    }
  }
  for (const auto& w : workers) {
    ResourceVector load;
    for (const auto& id : w.hosted) {
      if (auto it = usages.find(id); it != usages.end()) load += it->second;
    }
    RatioVector u = vector_normalize(load, w.capacity);
    for (ResourceKind k : kAllKinds) {
      if (u[k] > 1.0) out.push_back({Violation::Kind::OverCapacity, {}, w.id, k, u[k]});
    }
  }
  return out;
}

}  // namespace draps
