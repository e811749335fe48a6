#pragma once

#include <map>
#include <optional>
#include <vector>

#include "draps/model.hpp"

namespace draps {

/// Mutable cluster state: workers, services and container instances, plus
/// the bookkeeping that keeps the hosted sets and container placements in
/// agreement.
class Cluster {
 public:
  void add_worker(WorkerNode worker);
  void add_service(ServiceSpec service);

  /// Workers ordered by ascending id.
  const std::vector<WorkerNode>& workers() const { return workers_; }
  const std::map<ServiceId, ServiceSpec>& services() const { return services_; }
  const std::map<ContainerId, ContainerInstance>& containers() const { return containers_; }

  const WorkerNode& worker(const WorkerId& id) const;
  const ServiceSpec& service(const ServiceId& id) const;
  const ContainerInstance& container(const ContainerId& id) const;
  bool has_worker(const WorkerId& id) const;
  bool has_container(const ContainerId& id) const;

  /// New pending instance of `service`; ids are c000001, c000002, ...
  ContainerId create_container(const ServiceId& service, std::int64_t phase_offset = 0);
  /// Pending -> running on `worker`.
  void start(const ContainerId& id, const WorkerId& worker);
  /// Running -> killed; removes it from its worker's hosted set.
  void kill(const ContainerId& id);
  /// Drops a pending instance that was never started.
  void discard(const ContainerId& id);
  void advance_phase(const ContainerId& id);

  void set_alive(const WorkerId& id, bool alive);
  void set_ready(const WorkerId& id, bool ready);

  /// Running containers, ascending id.
  std::vector<ContainerId> running() const;
  /// Workers (ascending id) that host a running container of `service`.
  std::vector<WorkerId> hosts_of(const ServiceId& service) const;
  /// Sum of capacities over alive workers.
  ResourceVector alive_capacity() const;

 private:
  WorkerNode& mutable_worker(const WorkerId& id);
  ContainerInstance& mutable_container(const ContainerId& id);

  std::vector<WorkerNode> workers_;
  std::map<ServiceId, ServiceSpec> services_;
  std::map<ContainerId, ContainerInstance> containers_;
  std::uint64_t next_container_ = 1;
};

}  // namespace draps
