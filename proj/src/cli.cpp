#include "draps/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "draps/error.hpp"
#include "draps/registry.hpp"
#include "draps/trace.hpp"

namespace draps {

namespace fs = std::filesystem;

CompareReport compare_schedulers(const ScenarioConfig& config,
                                 std::span<const SchedulerKind> schedulers) {
  CompareReport report;
  report.scenario = config.name;
  report.rows.resize(schedulers.size());
  const auto n = static_cast<std::int64_t>(schedulers.size());

  // Each run owns its whole state; exceptions cannot cross the parallel
  // region, so they are parked and rethrown in row order.
  std::vector<std::exception_ptr> failures(schedulers.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      ScenarioConfig cfg = config;
      cfg.scheduler = schedulers[static_cast<std::size_t>(i)];
      report.rows[static_cast<std::size_t>(i)] = {cfg.scheduler, Simulation(cfg).run().summary};
    } catch (...) {
      failures[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    const auto& best = report.rows[report.winner];
    const auto& row = report.rows[i];
    if (row.summary.peak_nu < best.summary.peak_nu ||
        (row.summary.peak_nu == best.summary.peak_nu && row.scheduler < best.scheduler)) {
      report.winner = i;
    }
  }
  return report;
}

void write_compare_json(std::ostream& out, const CompareReport& report) {
  nlohmann::ordered_json j;
  j["scenario"] = report.scenario;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    const Summary& s = row.summary;
    nlohmann::ordered_json r;
    r["scheduler"] = std::string(to_string(row.scheduler));
    r["peak_nu"] = s.peak_nu;
    r["final_nu"] = s.final_nu;
    r["peak_mem_util"] = s.peak_mem_util;
    r["kills"] = s.kills;
    r["overload_events"] = s.overload_events;
    r["migrations"] = s.migrations;
    r["rejected"] = s.rejected;
    r["heartbeat_bytes"] = s.heartbeat_bytes;
    j["rows"].push_back(std::move(r));
  }
  if (!report.rows.empty()) {
    j["winner"] = std::string(to_string(report.rows[report.winner].scheduler));
  }
  out << j.dump(2) << '\n';
}

void write_compare_table(std::ostream& out, const CompareReport& report) {
  char line[256];
  std::snprintf(line, sizeof line, "%-8s %9s %9s %9s %6s %10s %8s %12s\n", "strategy", "peak_nu",
                "final_nu", "peak_mem", "kills", "migrations", "rejected", "hb_bytes");
  out << line;
  for (const auto& row : report.rows) {
    const Summary& s = row.summary;
    std::snprintf(line, sizeof line, "%-8s %9.4f %9.4f %9.4f %6zu %10zu %8zu %12llu\n",
                  std::string(to_string(row.scheduler)).c_str(), s.peak_nu, s.final_nu,
                  s.peak_mem_util, s.kills, s.migrations, s.rejected,
                  static_cast<unsigned long long>(s.heartbeat_bytes));
    out << line;
  }
  if (!report.rows.empty()) {
    out << "winner (lowest peak nu): " << to_string(report.rows[report.winner].scheduler) << '\n';
  }
}

namespace {

struct Options {
  std::string scenario;
  std::string scheduler;
  std::string schedulers = "spread,binpack,random,draps";
  std::string out_dir;
  std::string trace;
  std::string limits;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

ScenarioConfig load_with_overrides(const Options& o) {
  if (!fs::exists(o.scenario)) {
    throw Error(ErrorCode::InvalidConfig, "scenario file not found: " + o.scenario);
  }
  ScenarioConfig cfg = load_scenario(o.scenario);
  if (!o.scheduler.empty()) {
    auto kind = parse_scheduler(o.scheduler);
    if (!kind) throw Error(ErrorCode::InvalidConfig, "unknown scheduler '" + o.scheduler + "'");
    cfg.scheduler = *kind;
  }
  if (o.seed_set) cfg.seed = o.seed;
  return cfg;
}

/// Creates `dir` and writes every (name, content) pair into it.
void write_outputs(const fs::path& dir,
                   const std::vector<std::pair<std::string, std::string>>& files) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::InvalidConfig, "cannot create output directory " + dir.string() + ": " + ec.message());
  for (const auto& [name, content] : files) {
    std::ofstream f(dir / name, std::ios::binary);
    f << content;
    if (!f) throw Error(ErrorCode::InvalidConfig, "cannot write " + (dir / name).string());
  }
}

int cmd_run(const Options& o, std::ostream& out) {
  ScenarioConfig cfg = load_with_overrides(o);
  SimulationResult result = Simulation(cfg).run();

  std::ostringstream metrics, events, summary;
  write_metrics_csv(metrics, result);
  write_events_csv(events, result.events, result.tick_seconds);
  write_summary_json(summary, result.summary);
  fs::path dir = o.out_dir.empty() ? fs::path("out") : fs::path(o.out_dir);
  write_outputs(dir, {{"metrics.csv", metrics.str()},
                      {"events.csv", events.str()},
                      {"summary.json", summary.str()}});

  const Summary& s = result.summary;
  char line[200];
  std::snprintf(line, sizeof line,
                "%s: peak nu %.4f, final nu %.4f, kills %zu, migrations %zu, rejected %zu\n",
                std::string(to_string(s.scheduler)).c_str(), s.peak_nu, s.final_nu, s.kills,
                s.migrations, s.rejected);
  out << line << "wrote " << (dir / "metrics.csv").string() << ", "
      << (dir / "events.csv").string() << ", " << (dir / "summary.json").string() << '\n';
  return 0;
}

int cmd_compare(const Options& o, std::ostream& out) {
  std::vector<SchedulerKind> kinds;
  for (const auto& name : split(o.schedulers, ',')) {
    auto kind = parse_scheduler(name);
    if (!kind) throw Error(ErrorCode::InvalidConfig, "unknown scheduler '" + name + "'");
    kinds.push_back(*kind);
  }
  if (kinds.empty()) throw Error(ErrorCode::InvalidConfig, "--schedulers must name at least one strategy");
  ScenarioConfig cfg = load_with_overrides(o);
  CompareReport report = compare_schedulers(cfg, kinds);

  std::ostringstream json, table;
  write_compare_json(json, report);
  write_compare_table(table, report);
  if (!o.out_dir.empty()) write_outputs(o.out_dir, {{"compare.json", json.str()}});
  out << table.str();
  return 0;
}

ResourceVector parse_limits(const std::string& text) {
  auto parts = split(text, ',');
  if (parts.size() != kNumKinds) {
    throw Error(ErrorCode::InvalidConfig,
                "--limits needs four comma-separated values: memory,cpu,network,block_io");
  }
  ResourceVector v;
  for (std::size_t k = 0; k < kNumKinds; ++k) v[kAllKinds[k]] = parse_quantity(parts[k]);
  if (!v.all_positive()) throw Error(ErrorCode::InvalidCapacity, "--limits components must be > 0");
  return v;
}

int cmd_dom(const Options& o, std::ostream& out) {
  ResourceVector limits = parse_limits(o.limits);
  TraceTable table = read_trace_csv(fs::path(o.trace));

  // The whole file is the observation window.
  KnownServiceRegistry registry({1, table.samples.size() + 1});
  for (const auto& s : table.services) registry.add_service(s);
  for (const auto& row : table.samples) {
    registry.record_usage(row.service, row.container, row.usage,
                          static_cast<Tick>(row.tick_s));
  }

  char line[256];
  for (const auto& service : table.services) {
    ResourceVector avg = registry.average_service_demand(service);
    DominantKind dom = dominant_kind(avg, limits);
    std::snprintf(line, sizeof line,
                  "%s: mean memory=%.0f B cpu=%.4f cores network=%.1f B/s block_io=%.1f B/s | "
                  "share memory=%.6f cpu=%.6f network=%.6f block_io=%.6f | dominant=%s\n",
                  service.str().c_str(), avg.memory, avg.cpu, avg.network, avg.block_io,
                  dom.normalized[ResourceKind::Memory], dom.normalized[ResourceKind::Cpu],
                  dom.normalized[ResourceKind::Network], dom.normalized[ResourceKind::BlockIo],
                  std::string(to_string(dom.kind)).c_str());
    out << line;
    if (dom.tied) {
      out << "warning: " << service.str()
          << " has tied dominant shares; reporting the first kind in canonical order\n";
    }
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Container placement simulator: DRAPS and SwarmKit baseline strategies"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run one scenario and write metrics.csv, events.csv, summary.json");
  run->add_option("--scenario", o.scenario, "Scenario JSON file")->required();
  run->add_option("--scheduler", o.scheduler, "Override strategy: spread|binpack|random|draps");
  run->add_option("--seed", o.seed, "Override the scenario seed");
  run->add_option("--out", o.out_dir, "Output directory")->default_str("out");

  auto* cmp = app.add_subcommand("compare", "Run a scenario once per strategy and report the winner");
  cmp->add_option("--scenario", o.scenario, "Scenario JSON file")->required();
  cmp->add_option("--schedulers", o.schedulers, "Comma-separated strategies")
      ->default_str("spread,binpack,random,draps");
  cmp->add_option("--seed", o.seed, "Override the scenario seed");
  cmp->add_option("--out", o.out_dir, "Directory for compare.json (optional)");

  auto* dom = app.add_subcommand("dom", "Print each service's mean demand and dominant resource");
  dom->add_option("--trace", o.trace, "Trace CSV (docker-stats export)")->required();
  dom->add_option("--limits", o.limits,
                  "System limits memory,cpu,network,block_io (e.g. 28GiB,13,375MB,600MB)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  o.seed_set = (run->parsed() && run->count("--seed") > 0) ||
               (cmp->parsed() && cmp->count("--seed") > 0);

  try {
    if (run->parsed()) return cmd_run(o, out);
    if (cmp->parsed()) return cmd_compare(o, out);
    return cmd_dom(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return 1;
}

}  // namespace draps
