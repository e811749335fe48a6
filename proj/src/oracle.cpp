#include "draps/oracle.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include "draps/error.hpp"

namespace draps {

namespace {

void check_instance(const StaticInstance& instance) {
  if (instance.workers.empty()) {
    throw Error(ErrorCode::EmptyInput, "oracle needs at least one worker");
  }
  if (instance.containers.size() > kOracleMaxContainers ||
      instance.workers.size() > kOracleMaxWorkers) {
    throw Error(ErrorCode::BoundExceeded,
                "oracle enumeration is limited to 12 containers and 4 workers");
  }
  for (const auto& w : instance.workers) {
    if (!w.all_positive()) throw Error(ErrorCode::InvalidCapacity, "worker capacity must be > 0");
  }
  for (const auto& c : instance.containers) c.validate();
}

std::uint64_t assignment_count(const StaticInstance& instance) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < instance.containers.size(); ++i) n *= instance.workers.size();
  return n;
}

// Plain arrays sized to the enumeration bound keep the hot loop allocation free.
struct Kernel {
  const StaticInstance& instance;
  std::size_t n_containers;
  std::size_t n_workers;

  void decode(std::uint64_t index, std::array<std::size_t, kOracleMaxContainers>& digits) const {
    for (std::size_t c = 0; c < n_containers; ++c) {
      digits[c] = static_cast<std::size_t>(index % n_workers);
      index /= n_workers;
    }
  }

  double evaluate(const std::array<std::size_t, kOracleMaxContainers>& digits) const {
    std::array<ResourceVector, kOracleMaxWorkers> load{};
    for (std::size_t c = 0; c < n_containers; ++c) load[digits[c]] += instance.containers[c];
    double nu = 0.0;
    for (std::size_t w = 0; w < n_workers; ++w) {
      for (ResourceKind k : kAllKinds) nu = std::max(nu, load[w][k] / instance.workers[w][k]);
    }
    return nu;
  }
};

struct Best {
  double nu = std::numeric_limits<double>::infinity();
  std::uint64_t index = std::numeric_limits<std::uint64_t>::max();

  void offer(double candidate, std::uint64_t at) {
    if (candidate < nu || (candidate == nu && at < index)) {
      nu = candidate;
      index = at;
    }
  }
};

OracleResult finish(const StaticInstance& instance, const Kernel& kernel, const Best& best,
                    std::uint64_t evaluated) {
  std::array<std::size_t, kOracleMaxContainers> digits{};
  kernel.decode(best.index, digits);
  OracleResult out;
  out.nu = best.nu;
  out.assignment.assign(digits.begin(), digits.begin() + instance.containers.size());
  out.feasible = best.nu <= 1.0;
  out.evaluated = evaluated;
  return out;
}

}  // namespace

double static_nu(const StaticInstance& instance, std::span<const std::size_t> assignment) {
  if (assignment.size() != instance.containers.size()) {
    throw Error(ErrorCode::InvalidConfig, "assignment length does not match container count");
  }
  std::vector<ResourceVector> load(instance.workers.size());
  for (std::size_t c = 0; c < assignment.size(); ++c) {
    if (assignment[c] >= instance.workers.size()) {
      throw Error(ErrorCode::UnknownWorker, "assignment names a worker out of range");
    }
    load[assignment[c]] += instance.containers[c];
  }
  double nu = 0.0;
  for (std::size_t w = 0; w < instance.workers.size(); ++w) {
    for (ResourceKind k : kAllKinds) nu = std::max(nu, load[w][k] / instance.workers[w][k]);
  }
  return nu;
}

OracleResult brute_force_optimal_nu_serial(const StaticInstance& instance) {
  check_instance(instance);
  Kernel kernel{instance, instance.containers.size(), instance.workers.size()};
  const std::uint64_t total = assignment_count(instance);
  Best best;
  std::array<std::size_t, kOracleMaxContainers> digits{};
  for (std::uint64_t i = 0; i < total; ++i) {
    kernel.decode(i, digits);
    best.offer(kernel.evaluate(digits), i);
  }
  return finish(instance, kernel, best, total);
}

OracleResult brute_force_optimal_nu(const StaticInstance& instance) {
  check_instance(instance);
  Kernel kernel{instance, instance.containers.size(), instance.workers.size()};
  const std::uint64_t total = assignment_count(instance);
  const auto n = static_cast<std::int64_t>(total);
  Best best;

#pragma omp parallel
  {
    Best local;
    std::array<std::size_t, kOracleMaxContainers> digits{};
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      kernel.decode(static_cast<std::uint64_t>(i), digits);
      local.offer(kernel.evaluate(digits), static_cast<std::uint64_t>(i));
    }
#pragma omp critical(draps_oracle_reduce)
    best.offer(local.nu, local.index);
  }
  return finish(instance, kernel, best, total);
}

}  // namespace draps
