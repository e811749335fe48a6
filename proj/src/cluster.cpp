#include "draps/cluster.hpp"

#include <algorithm>
#include <cstdio>
#include <utility>

#include "draps/error.hpp"

namespace draps {

void Cluster::add_worker(WorkerNode worker) {
  if (has_worker(worker.id)) {
    throw Error(ErrorCode::InvalidConfig, "duplicate worker id " + worker.id.str());
  }
  if (!worker.capacity.all_positive()) {
    throw Error(ErrorCode::InvalidCapacity,
                "worker " + worker.id.str() + " needs strictly positive capacity");
  }
  auto pos = std::lower_bound(workers_.begin(), workers_.end(), worker.id,
                              [](const WorkerNode& w, const WorkerId& id) { return w.id < id; });
  workers_.insert(pos, std::move(worker));
}

void Cluster::add_service(ServiceSpec service) {
  if (services_.count(service.id)) {
    throw Error(ErrorCode::InvalidConfig, "duplicate service id " + service.id.str());
  }
  if (service.reservation) service.reservation->validate();
  services_.emplace(service.id, std::move(service));
}

bool Cluster::has_worker(const WorkerId& id) const {
  return std::any_of(workers_.begin(), workers_.end(),
                     [&](const WorkerNode& w) { return w.id == id; });
}

bool Cluster::has_container(const ContainerId& id) const { return containers_.count(id) != 0; }

const WorkerNode& Cluster::worker(const WorkerId& id) const {
  auto it = std::find_if(workers_.begin(), workers_.end(),
                         [&](const WorkerNode& w) { return w.id == id; });
  if (it == workers_.end()) throw Error(ErrorCode::UnknownWorker, "unknown worker " + id.str());
  return *it;
}

WorkerNode& Cluster::mutable_worker(const WorkerId& id) {
  return const_cast<WorkerNode&>(std::as_const(*this).worker(id));
}

const ServiceSpec& Cluster::service(const ServiceId& id) const {
  auto it = services_.find(id);
  if (it == services_.end()) throw Error(ErrorCode::UnknownService, "unknown service " + id.str());
  return it->second;
}

const ContainerInstance& Cluster::container(const ContainerId& id) const {
  auto it = containers_.find(id);
  if (it == containers_.end()) {
    throw Error(ErrorCode::UnknownContainer, "unknown container " + id.str());
  }
  return it->second;
}

ContainerInstance& Cluster::mutable_container(const ContainerId& id) {
  return const_cast<ContainerInstance&>(std::as_const(*this).container(id));
}

ContainerId Cluster::create_container(const ServiceId& service_id, std::int64_t phase_offset) {
  service(service_id);
  char buf[32];
  std::snprintf(buf, sizeof buf, "c%06llu", static_cast<unsigned long long>(next_container_++));
  ContainerInstance c;
  c.id = ContainerId(buf);
  c.service = service_id;
  c.phase_offset = phase_offset;
  auto id = c.id;
  containers_.emplace(id, std::move(c));
  return id;
}

void Cluster::start(const ContainerId& id, const WorkerId& worker_id) {
  auto& c = mutable_container(id);
  if (c.state != ContainerState::Pending) {
    throw Error(ErrorCode::InvalidConfig, "container " + id.str() + " is not pending");
  }
  auto& w = mutable_worker(worker_id);
  if (!w.alive) throw Error(ErrorCode::UnknownWorker, "worker " + worker_id.str() + " is dead");
  w.hosted.insert(id);
  c.worker = worker_id;
  c.state = ContainerState::Running;
}

void Cluster::kill(const ContainerId& id) {
  auto& c = mutable_container(id);
  if (c.state != ContainerState::Running) return;
  mutable_worker(*c.worker).hosted.erase(id);
  c.state = ContainerState::Killed;
}

void Cluster::discard(const ContainerId& id) {
  if (container(id).state != ContainerState::Pending) {
    throw Error(ErrorCode::InvalidConfig, "only pending containers can be discarded");
  }
  containers_.erase(id);
}

void Cluster::advance_phase(const ContainerId& id) { mutable_container(id).phase_offset += 1; }

void Cluster::set_alive(const WorkerId& id, bool alive) {
  auto& w = mutable_worker(id);
  if (!alive) {
    // Containers cannot outlive their worker.
    std::vector<ContainerId> doomed(w.hosted.begin(), w.hosted.end());
    for (const auto& c : doomed) kill(c);
  }
  w.alive = alive;
}

void Cluster::set_ready(const WorkerId& id, bool ready) { mutable_worker(id).ready = ready; }

std::vector<ContainerId> Cluster::running() const {
  std::vector<ContainerId> out;
  for (const auto& [id, c] : containers_) {
    if (c.state == ContainerState::Running) out.push_back(id);
  }
  return out;
}

std::vector<WorkerId> Cluster::hosts_of(const ServiceId& service_id) const {
  std::vector<WorkerId> out;
  for (const auto& w : workers_) {
    bool hosts = std::any_of(w.hosted.begin(), w.hosted.end(), [&](const ContainerId& c) {
      return containers_.at(c).service == service_id;
    });
    if (hosts) out.push_back(w.id);
  }
  return out;
}

ResourceVector Cluster::alive_capacity() const {
  ResourceVector sum;
  for (const auto& w : workers_) {
    if (w.alive) sum += w.capacity;
  }
  return sum;
}

}  // namespace draps
