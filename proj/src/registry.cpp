#include "draps/registry.hpp"

#include "draps/error.hpp"

namespace draps {

DominantKind dominant_kind(const ResourceVector& demand, const ResourceVector& limits) {
  DominantKind out;
  out.normalized = vector_normalize(demand, limits);
  out.kind = out.normalized.argmax();
  double best = out.normalized[out.kind];
  int at_max = 0;
  for (ResourceKind k : kAllKinds) {
    if (out.normalized[k] == best) ++at_max;
  }
  out.tied = at_max > 1;
  return out;
}

KnownServiceRegistry::KnownServiceRegistry(RegistryConfig config) : config_(config) {
  if (config_.window_samples == 0) {
    throw Error(ErrorCode::InvalidConfig, "window_samples must be >= 1");
  }
}

void KnownServiceRegistry::add_service(const ServiceId& service) { services_[service]; }

bool KnownServiceRegistry::has_service(const ServiceId& service) const {
  return services_.count(service) != 0;
}

const KnownServiceRegistry::ServiceHistory& KnownServiceRegistry::history(
    const ServiceId& service) const {
  auto it = services_.find(service);
  if (it == services_.end()) {
    throw Error(ErrorCode::UnknownService, "unknown service " + service.str());
  }
  return it->second;
}

void KnownServiceRegistry::record_usage(const ServiceId& service, const ContainerId& container,
                                        const ResourceVector& usage, Tick tick) {
  usage.validate();
  auto it = services_.find(service);
  if (it == services_.end()) {
    throw Error(ErrorCode::UnknownService, "unknown service " + service.str());
  }
  auto& buffer = it->second.per_container[container];
  buffer.push_back({tick, usage});
  while (buffer.size() > config_.window_samples) buffer.pop_front();
  it->second.total += 1;
}

void KnownServiceRegistry::forget_container(const ServiceId& service,
                                            const ContainerId& container) {
  auto it = services_.find(service);
  if (it != services_.end()) it->second.per_container.erase(container);
}

bool KnownServiceRegistry::is_known(const ServiceId& service) const {
  auto it = services_.find(service);
  return it != services_.end() && it->second.total >= config_.warmup_samples;
}

std::size_t KnownServiceRegistry::total_samples(const ServiceId& service) const {
  return history(service).total;
}

std::size_t KnownServiceRegistry::buffered_samples(const ServiceId& service) const {
  std::size_t n = 0;
  for (const auto& [_, buf] : history(service).per_container) n += buf.size();
  return n;
}

std::size_t KnownServiceRegistry::buffered_samples(const ServiceId& service,
                                                   const ContainerId& container) const {
  const auto& h = history(service);
  auto it = h.per_container.find(container);
  return it == h.per_container.end() ? 0 : it->second.size();
}

ResourceVector KnownServiceRegistry::average_service_demand(const ServiceId& service) const {
  const auto& h = history(service);
  ResourceVector sum;
  std::size_t n = 0;
  for (const auto& [_, buf] : h.per_container) {
    for (const auto& s : buf) {
      sum += s.usage;
      ++n;
    }
  }
  if (n == 0) {
    throw Error(ErrorCode::UnknownDemand, "no usage samples for service " + service.str());
  }
  return sum * (1.0 / static_cast<double>(n));
}

ResourceKind KnownServiceRegistry::dominant_resource(const ServiceId& service,
                                                     const ResourceVector& system_limits) {
  if (!is_known(service)) {
    throw Error(ErrorCode::UnknownService, "service " + service.str() + " is not known yet");
  }
  ResourceKind kind = dominant_kind(average_service_demand(service), system_limits).kind;
  services_.at(service).cached = kind;
  return kind;
}

std::optional<ResourceKind> KnownServiceRegistry::cached_dominant(const ServiceId& service) const {
  return history(service).cached;
}

}  // namespace draps
