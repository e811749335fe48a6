#include "draps/schedulers.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "draps/error.hpp"

namespace draps {

std::string_view to_string(SchedulerKind kind) {
  switch (kind) {
    case SchedulerKind::Spread: return "spread";
    case SchedulerKind::Binpack: return "binpack";
    case SchedulerKind::Random: return "random";
    case SchedulerKind::Draps: return "draps";
  }
  return "?";
}

std::optional<SchedulerKind> parse_scheduler(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (auto kind : kAllSchedulers) {
    if (to_string(kind) == lower) return kind;
  }
  return std::nullopt;
}

std::size_t Rng::uniform_index(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::EmptyInput, "uniform_index over an empty range");
  std::uniform_int_distribution<std::size_t> dist(0, n - 1);
  return dist(engine_);
}

CandidateList apply_filters(const ServiceSpec& task, std::span<const WorkerNode> workers,
                            const ResourceMap& reservations, const FilterSet& filters) {
  CandidateList out;
  for (const auto& w : workers) {
    if (!w.alive) continue;
    if (filters.ready && !w.ready) continue;
    if (filters.resource && task.reservation) {
      ResourceVector reserved;
      if (auto it = reservations.find(w.id); it != reservations.end()) reserved = it->second;
      if (!(reserved + *task.reservation).fits_within(w.capacity)) continue;
    }
    if (filters.plugin && !std::includes(w.plugins.begin(), w.plugins.end(),
                                         task.required_plugins.begin(),
                                         task.required_plugins.end())) {
      continue;
    }
    if (filters.constraint && !std::includes(w.labels.begin(), w.labels.end(),
                                             task.constraints.begin(), task.constraints.end())) {
      continue;
    }
    out.push_back(std::cref(w));
  }
  std::sort(out.begin(), out.end(),
            [](const WorkerNode& a, const WorkerNode& b) { return a.id < b.id; });
  return out;
}

namespace {

/// Candidate maximizing `score`, ties to the smallest id.
template <class Score>
std::optional<WorkerId> argmax_by(const CandidateList& candidates, Score score) {
  const WorkerNode* best = nullptr;
  double best_score = 0.0;
  for (const WorkerNode& w : candidates) {
    double s = score(w);
    if (!best || s > best_score || (s == best_score && w.id < best->id)) {
      best = &w;
      best_score = s;
    }
  }
  if (!best) return std::nullopt;
  return best->id;
}

}  // namespace

std::optional<WorkerId> place_spread(const CandidateList& candidates) {
  return argmax_by(candidates,
                   [](const WorkerNode& w) { return -static_cast<double>(w.hosted.size()); });
}

std::optional<WorkerId> place_binpack(const CandidateList& candidates) {
  return argmax_by(candidates,
                   [](const WorkerNode& w) { return static_cast<double>(w.hosted.size()); });
}

std::optional<WorkerId> place_random(const CandidateList& candidates, Rng& rng) {
  if (candidates.empty()) return std::nullopt;
  CandidateList sorted = candidates;
  std::sort(sorted.begin(), sorted.end(),
            [](const WorkerNode& a, const WorkerNode& b) { return a.id < b.id; });
  return sorted[rng.uniform_index(sorted.size())].get().id;
}

std::optional<WorkerId> place_draps(const ServiceSpec& task, const CandidateList& candidates,
                                    KnownServiceRegistry& registry,
                                    const ResourceMap& availability,
                                    const ResourceVector& system_limits) {
  auto available = [&](const WorkerNode& w) {
    auto it = availability.find(w.id);
    return it == availability.end() ? w.capacity : it->second;
  };

  // A known service whose containers have all gone has no current demand to
  // rank by, so it falls through to the average branch.
  if (registry.is_known(task.id) && registry.buffered_samples(task.id) > 0) {
    ResourceKind dom = registry.dominant_resource(task.id, system_limits);
    return argmax_by(candidates, [&](const WorkerNode& w) { return available(w)[dom]; });
  }
  return argmax_by(candidates, [&](const WorkerNode& w) {
    return vector_normalize(available(w), w.capacity).mean();
  });
}

PlacementDecision place(SchedulerKind kind, const ContainerId& container, const ServiceSpec& task,
                        std::span<const WorkerNode> workers, const PlacementInputs& inputs) {
  static const ResourceMap kEmpty;
  const ResourceMap& reservations = inputs.reservations ? *inputs.reservations : kEmpty;
  CandidateList candidates = apply_filters(task, workers, reservations, inputs.filters);

  std::optional<WorkerId> chosen;
  switch (kind) {
    case SchedulerKind::Spread: chosen = place_spread(candidates); break;
    case SchedulerKind::Binpack: chosen = place_binpack(candidates); break;
    case SchedulerKind::Random:
      if (!inputs.rng) throw Error(ErrorCode::InvalidConfig, "random placement needs an rng");
      chosen = place_random(candidates, *inputs.rng);
      break;
    case SchedulerKind::Draps: {
      if (!inputs.registry || !inputs.availability) {
        throw Error(ErrorCode::InvalidConfig, "draps placement needs registry and availability");
      }
      ResourceVector limits;
      for (const auto& w : workers) {
        if (w.alive) limits += w.capacity;
      }
      if (!candidates.empty()) {
        chosen = place_draps(task, candidates, *inputs.registry, *inputs.availability, limits);
      }
      break;
    }
  }
  if (!chosen) return {container, Rejected{"no-worker"}};
  return {container, *chosen};
}

std::vector<std::size_t> heuristic_assignment(SchedulerKind kind, const StaticInstance& instance,
                                              std::uint64_t seed) {
  std::vector<WorkerNode> workers;
  ResourceMap availability;
  for (std::size_t w = 0; w < instance.workers.size(); ++w) {
    WorkerNode node;
    char name[16];
    std::snprintf(name, sizeof name, "w%02zu", w);
    node.id = WorkerId(name);
    node.capacity = instance.workers[w];
    availability[node.id] = node.capacity;
    workers.push_back(std::move(node));
  }

  KnownServiceRegistry registry;
  Rng rng(seed);
  PlacementInputs inputs;
  inputs.filters = FilterSet::none();
  inputs.registry = &registry;
  inputs.availability = &availability;
  inputs.rng = &rng;

  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < instance.containers.size(); ++c) {
    ServiceSpec task;
    task.id = ServiceId("s" + std::to_string(c));
    ContainerId cid("c" + std::to_string(c));
    auto decision = place(kind, cid, task, workers, inputs);
    // No filters are active, so every decision is an assignment.
    std::size_t index = static_cast<std::size_t>(
        std::find_if(workers.begin(), workers.end(),
                     [&](const WorkerNode& w) { return w.id == decision.worker(); }) -
        workers.begin());
    workers[index].hosted.insert(cid);
    availability[workers[index].id] =
        (availability[workers[index].id] - instance.containers[c]).clamped();
    out.push_back(index);
  }
  return out;
}

}  // namespace draps
