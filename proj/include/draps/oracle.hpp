#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "draps/resource.hpp"

namespace draps {

/// A placement problem with constant per-container demands.
struct StaticInstance {
  std::vector<ResourceVector> containers;
  std::vector<ResourceVector> workers;  // capacities
};

struct OracleResult {
  double nu = 0.0;
  /// assignment[i] is the worker index of container i.
  std::vector<std::size_t> assignment;
  /// True iff every ratio of the best assignment is <= 1.
  bool feasible = false;
  std::uint64_t evaluated = 0;
};

inline constexpr std::size_t kOracleMaxContainers = 12;
inline constexpr std::size_t kOracleMaxWorkers = 4;

/// Cluster-wide max ratio of a fixed assignment.
double static_nu(const StaticInstance& instance, std::span<const std::size_t> assignment);

/// Exhaustive search over all workers^containers assignments for the minimal
/// max ratio. Minimizing the max ratio also decides feasibility (nu <= 1).
/// Among equal nu, the assignment with the smallest enumeration index wins,
/// where container 0 is the least significant digit. Throws
/// Error(BoundExceeded) above 12 containers or 4 workers.
OracleResult brute_force_optimal_nu(const StaticInstance& instance);

/// Single-threaded reference for brute_force_optimal_nu; returns the same
/// result bit for bit.
OracleResult brute_force_optimal_nu_serial(const StaticInstance& instance);

}  // namespace draps
