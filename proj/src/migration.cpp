#include "draps/migration.hpp"

#include <algorithm>
#include <set>

#include "draps/error.hpp"

namespace draps {

std::optional<AlertMsg> self_examine(const WorkerNode& worker, const UsageMap& usages,
                                     double threshold, Tick tick) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "alert threshold must lie in (0, 1)");
  }
  if (worker.hosted.empty()) return std::nullopt;

  RatioVector u = utilization(worker, usages);
  RatioVector remaining;
  for (ResourceKind k : kAllKinds) remaining[k] = 1.0 - u[k];
  ResourceKind bottleneck = remaining.argmin();
  if (!(remaining[bottleneck] < threshold)) return std::nullopt;

  const ContainerId* costly = nullptr;
  double most = -1.0;
  for (const auto& id : worker.hosted) {  // ascending id, so ">" keeps the first on ties
    auto it = usages.find(id);
    double amount = it == usages.end() ? 0.0 : it->second[bottleneck];
    if (amount > most) {
      most = amount;
      costly = &id;
    }
  }
  return AlertMsg{worker.id, bottleneck, *costly, tick};
}

bool AlertThrottle::admit(const WorkerId& worker, Tick tick) {
  auto it = last_.find(worker);
  if (it != last_.end() && tick - it->second < cooldown_) return false;
  last_[worker] = tick;
  return true;
}

MigrationDecision handle_alert(const AlertMsg& alert, const Cluster& cluster,
                               KnownServiceRegistry& registry, const ResourceMap& availability,
                               const FilterSet& filters, const ResourceMap& reservations) {
  const WorkerNode& source = cluster.worker(alert.worker);
  const ContainerInstance& container = cluster.container(alert.container);
  if (!source.alive) {
    throw Error(ErrorCode::UnknownWorker, "alert from dead worker " + alert.worker.str());
  }
  if (container.state != ContainerState::Running || !source.hosted.count(alert.container)) {
    throw Error(ErrorCode::NotHosted, "alert names container " + alert.container.str() +
                                          " which worker " + alert.worker.str() +
                                          " does not host");
  }

  MigrationDecision decision{alert.container, alert.worker, std::nullopt, {}};
  const ServiceSpec& spec = cluster.service(container.service);

  CandidateList candidates = apply_filters(spec, cluster.workers(), reservations, filters);
  std::erase_if(candidates, [&](const WorkerNode& w) { return w.id == alert.worker; });

  auto hosts = cluster.hosts_of(spec.id);
  std::set<WorkerId> replica_hosts(hosts.begin(), hosts.end());
  bool global = std::all_of(candidates.begin(), candidates.end(), [&](const WorkerNode& w) {
    return replica_hosts.count(w.id) != 0;
  });
  if (!global) {
    std::erase_if(candidates, [&](const WorkerNode& w) { return replica_hosts.count(w.id) != 0; });
  }
  if (candidates.empty()) {
    decision.reason = "no-worker";
    return decision;
  }

  ResourceKind kind = alert.bottleneck;
  if (registry.is_known(spec.id) && registry.buffered_samples(spec.id) > 0) {
    kind = registry.dominant_resource(spec.id, cluster.alive_capacity());
  }

  const WorkerNode* best = nullptr;
  double best_amount = 0.0;
  for (const WorkerNode& w : candidates) {
    auto it = availability.find(w.id);
    double amount = (it == availability.end() ? w.capacity : it->second)[kind];
    if (!best || amount > best_amount) {  // candidates are id-sorted
      best = &w;
      best_amount = amount;
    }
  }
  decision.to = best->id;
  return decision;
}

std::optional<ContainerId> execute_migration(Cluster& cluster, const MigrationDecision& decision,
                                             EventLog& log, Tick tick) {
  const ContainerInstance& old = cluster.container(decision.container);
  const ServiceId service = old.service;

  auto abort = [&](const std::string& why) -> std::optional<ContainerId> {
    log.append({tick, EventType::MigrateAbort, decision.container.str(), service.str(),
                decision.from.str(), decision.to ? decision.to->str() : "", why});
    return std::nullopt;
  };

  if (!decision.to) return abort(decision.reason.empty() ? "no-target" : decision.reason);
  if (*decision.to == decision.from) return abort("self-target");
  if (!cluster.worker(*decision.to).alive) return abort("target-dead");
  if (!cluster.worker(decision.from).alive) return abort("source-dead");
  if (old.state != ContainerState::Running || old.worker != decision.from) {
    return abort("container-gone");
  }

  ContainerId fresh = cluster.create_container(service, old.phase_offset);
  cluster.start(fresh, *decision.to);
  log.append({tick, EventType::Migrate, fresh.str(), service.str(), decision.from.str(),
              decision.to->str(), "replaces " + decision.container.str()});
  cluster.kill(decision.container);
  log.append({tick, EventType::Kill, decision.container.str(), service.str(),
              decision.from.str(), "", "migrated"});
  return fresh;
}

}  // namespace draps
