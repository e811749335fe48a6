#pragma once

#include <ostream>
#include <span>
#include <vector>

#include "draps/scenario.hpp"
#include "draps/simulator.hpp"

namespace draps {

struct CompareRow {
  SchedulerKind scheduler;
  Summary summary;
};

/// One row per requested strategy, in request order.
struct CompareReport {
  std::string scenario;
  std::vector<CompareRow> rows;
  /// Index into rows of the minimal peak nu; ties go to the strategy that
  /// comes first in enumeration order, then to the earlier row.
  std::size_t winner = 0;
};

/// Runs `config` once per strategy with identical seeds. Runs are independent
/// and execute in parallel; the report does not depend on thread timing.
CompareReport compare_schedulers(const ScenarioConfig& config,
                                 std::span<const SchedulerKind> schedulers);

void write_compare_json(std::ostream& out, const CompareReport& report);
void write_compare_table(std::ostream& out, const CompareReport& report);

/// Entry point of the `draps` tool. Returns the process exit status; a
/// non-zero status is always accompanied by a message on `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace draps
