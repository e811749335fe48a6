#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <optional>

#include "draps/model.hpp"
#include "draps/resource.hpp"

namespace draps {

struct RegistryConfig {
  /// Samples a service must accumulate before it joins the known set.
  std::size_t warmup_samples = 12;
  /// Most recent samples kept per container.
  std::size_t window_samples = 6;
};

/// Result of a dominant-kind computation; `tied` is set when more than one
/// kind shares the maximal normalized demand.
struct DominantKind {
  ResourceKind kind = ResourceKind::Memory;
  RatioVector normalized;
  bool tied = false;
};

/// argmax_k demand_k / limits_k with ties resolved by canonical kind order.
DominantKind dominant_kind(const ResourceVector& demand, const ResourceVector& limits);

/// Per-service usage history observed by the manager, and the known-service
/// set derived from it.
class KnownServiceRegistry {
 public:
  explicit KnownServiceRegistry(RegistryConfig config = {});

  const RegistryConfig& config() const { return config_; }

  /// Makes a service id acceptable to record_usage().
  void add_service(const ServiceId& service);
  bool has_service(const ServiceId& service) const;

  void record_usage(const ServiceId& service, const ContainerId& container,
                    const ResourceVector& usage, Tick tick);

  /// Drops the buffered samples of a container that no longer runs. The
  /// service's accumulated sample count, and so its known flag, is kept.
  void forget_container(const ServiceId& service, const ContainerId& container);

  bool is_known(const ServiceId& service) const;
  std::size_t total_samples(const ServiceId& service) const;
  std::size_t buffered_samples(const ServiceId& service) const;
  std::size_t buffered_samples(const ServiceId& service, const ContainerId& container) const;

  /// Mean over every buffered sample of every container of the service.
  ResourceVector average_service_demand(const ServiceId& service) const;

  /// Dominant kind of a known service against the system limits (sum of the
  /// capacities of the alive workers). Refreshes the cached value.
  ResourceKind dominant_resource(const ServiceId& service, const ResourceVector& system_limits);

  std::optional<ResourceKind> cached_dominant(const ServiceId& service) const;

 private:
  struct Sample {
    Tick tick;
    ResourceVector usage;
  };
  struct ServiceHistory {
    std::map<ContainerId, std::deque<Sample>> per_container;
    std::size_t total = 0;
    std::optional<ResourceKind> cached;
  };

  const ServiceHistory& history(const ServiceId& service) const;

  RegistryConfig config_;
  std::map<ServiceId, ServiceHistory> services_;
};

}  // namespace draps
