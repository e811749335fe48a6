#pragma once

#include <map>
#include <optional>
#include <string>

#include "draps/cluster.hpp"
#include "draps/events.hpp"
#include "draps/metrics.hpp"
#include "draps/registry.hpp"
#include "draps/schedulers.hpp"

namespace draps {

/// Worker -> manager notice that one resource kind is running out.
struct AlertMsg {
  WorkerId worker;
  ResourceKind bottleneck = ResourceKind::Memory;
  /// Hosted container using the most of the bottleneck kind.
  ContainerId container;
  Tick tick = 0;
};

struct MigrationDecision {
  ContainerId container;
  WorkerId from;
  std::optional<WorkerId> to;
  std::string reason;  // set when `to` is empty
};

/// Worker-side check. Fires when the least remaining fraction over kinds,
/// 1 - u_k, drops below `threshold`; the bottleneck is that kind (ties in
/// canonical order) and the named container is the one with the largest
/// usage in it (ties to the smallest id). Throws Error(InvalidConfig) unless
/// 0 < threshold < 1.
std::optional<AlertMsg> self_examine(const WorkerNode& worker, const UsageMap& usages,
                                     double threshold, Tick tick);

/// Rate limit of one alert per worker per cooldown window.
class AlertThrottle {
 public:
  explicit AlertThrottle(Tick cooldown_ticks) : cooldown_(cooldown_ticks) {}
  /// True, and records the emission, if `worker` may alert at `tick`.
  bool admit(const WorkerId& worker, Tick tick);

 private:
  Tick cooldown_;
  std::map<WorkerId, Tick> last_;
};

/// Manager-side choice of a migration target for an alert.
///
/// Candidates are the alive workers other than the alerting one that pass
/// the active filters. If every candidate already hosts a replica of the
/// service the whole set is used; otherwise workers hosting a replica are
/// dropped. The target maximizes available capacity in the service's
/// dominant kind when the service is known, or in the alert's bottleneck
/// kind otherwise. Throws Error on a dangling worker or container.
MigrationDecision handle_alert(const AlertMsg& alert, const Cluster& cluster,
                               KnownServiceRegistry& registry, const ResourceMap& availability,
                               const FilterSet& filters, const ResourceMap& reservations);

/// Starts a replacement instance on the target that continues the old
/// instance's trace phase, then kills the old instance. Logs migrate then
/// kill. If the target or source is no longer alive, or the container no
/// longer runs, logs migrate_abort and changes nothing else.
/// Returns the new container's id on success.
std::optional<ContainerId> execute_migration(Cluster& cluster, const MigrationDecision& decision,
                                             EventLog& log, Tick tick);

}  // namespace draps
