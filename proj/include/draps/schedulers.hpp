#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "draps/model.hpp"
#include "draps/oracle.hpp"
#include "draps/registry.hpp"

namespace draps {

/// The four SwarmKit-style filters. A disabled filter rejects nothing.
struct FilterSet {
  bool ready = true;
  bool resource = true;
  bool plugin = true;
  bool constraint = true;

  static FilterSet none() { return {false, false, false, false}; }
};

enum class SchedulerKind { Spread, Binpack, Random, Draps };

inline constexpr SchedulerKind kAllSchedulers[] = {SchedulerKind::Spread, SchedulerKind::Binpack,
                                                   SchedulerKind::Random, SchedulerKind::Draps};

std::string_view to_string(SchedulerKind kind);
std::optional<SchedulerKind> parse_scheduler(std::string_view name);

using ResourceMap = std::map<WorkerId, ResourceVector>;
using CandidateList = std::vector<std::reference_wrapper<const WorkerNode>>;

/// Seeded random stream owned by the caller so strategies stay pure.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, n).
  std::size_t uniform_index(std::size_t n);
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Alive workers that pass every enabled filter, ascending id.
///  - ready: worker.ready
///  - resource: reserved + task.reservation fits capacity (only if the task
///    declares a reservation)
///  - plugin: required plugins present
///  - constraint: constraint labels present
CandidateList apply_filters(const ServiceSpec& task, std::span<const WorkerNode> workers,
                            const ResourceMap& reservations, const FilterSet& filters);

std::optional<WorkerId> place_spread(const CandidateList& candidates);
std::optional<WorkerId> place_binpack(const CandidateList& candidates);
std::optional<WorkerId> place_random(const CandidateList& candidates, Rng& rng);

/// DRAPS choice among already-filtered candidates.
///
/// Known services go to the candidate with the most available capacity in
/// the service's dominant kind (absolute amount). Unknown services go to the
/// candidate with the highest mean over kinds of available_k / capacity_k.
/// Workers missing from `availability` are treated as fully available.
std::optional<WorkerId> place_draps(const ServiceSpec& task, const CandidateList& candidates,
                                    KnownServiceRegistry& registry,
                                    const ResourceMap& availability,
                                    const ResourceVector& system_limits);

/// Everything a strategy may read when placing one container.
struct PlacementInputs {
  FilterSet filters;
  const ResourceMap* reservations = nullptr;
  KnownServiceRegistry* registry = nullptr;   // required for Draps
  const ResourceMap* availability = nullptr;  // required for Draps
  Rng* rng = nullptr;                         // required for Random
};

/// Filters then places with the given strategy. An empty candidate list
/// yields a rejected("no-worker") decision.
PlacementDecision place(SchedulerKind kind, const ContainerId& container, const ServiceSpec& task,
                        std::span<const WorkerNode> workers, const PlacementInputs& inputs);

/// Places the containers of a static instance one by one with the given
/// strategy and returns the worker index per container. Each container is
/// its own never-seen service; DRAPS availability is capacity minus the
/// demands already placed.
std::vector<std::size_t> heuristic_assignment(SchedulerKind kind, const StaticInstance& instance,
                                              std::uint64_t seed);

}  // namespace draps
