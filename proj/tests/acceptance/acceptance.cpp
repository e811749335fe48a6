// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure.
//
//   ./build/tests/acceptance [fixtures-dir]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "draps/oracle.hpp"
#include "draps/registry.hpp"
#include "draps/scenario.hpp"
#include "draps/schedulers.hpp"
#include "draps/simulator.hpp"

using namespace draps;

namespace {

std::string g_fixtures = DRAPS_FIXTURES;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

ScenarioConfig scenario(const std::string& name, SchedulerKind kind) {
  auto cfg = load_scenario(g_fixtures + "/scenarios/" + name + ".json");
  cfg.scheduler = kind;
  return cfg;
}

double max_peak_mem(const Summary& s) {
  double m = 0;
  for (const auto& [_, v] : s.peak_mem_by_worker) m = std::max(m, v);
  return m;
}

Outcome spread_balance() {
  auto t0 = Clock::now();
  auto r = run(scenario("idle100", SchedulerKind::Spread));
  double dt = seconds_since(t0);
  const auto& c = r.summary.final_counts;
  Outcome o;
  o.pass = c.at("w1") == 34 && c.at("w2") == 33 && c.at("w3") == 33 && r.summary.kills == 0 && dt < 1.0;
  o.detail = "counts " + std::to_string(c.at("w1")) + "/" + std::to_string(c.at("w2")) + "/" +
             std::to_string(c.at("w3")) + fmt(", %.3f s", dt);
  return o;
}

Outcome overload_cascade() {
  auto t0 = Clock::now();
  auto spread = run(scenario("idle140", SchedulerKind::Spread));
  auto draps = run(scenario("idle140", SchedulerKind::Draps));

  Tick first = -1;
  for (const auto& e : spread.events.events()) {
    if (e.type == EventType::WorkerOverload && e.from_worker == "w1") {
      first = e.tick;
      break;
    }
  }
  bool emptied = false;
  for (const auto& rec : spread.metrics) {
    if (first >= 0 && rec.tick >= first && rec.worker == WorkerId("w1") && rec.n_containers == 0) {
      emptied = true;
      break;
    }
  }
  std::size_t draps_overloads = draps.events.count(EventType::WorkerOverload);
  double dt = seconds_since(t0);
  Outcome o;
  o.pass = first >= 0 && emptied && draps_overloads == 0 && dt < 10.0;
  o.detail = "spread: first w1 overload at tick " + std::to_string(first) + ", w1 emptied " +
             (emptied ? "yes" : "no") + ", " + std::to_string(spread.summary.kills) +
             " kills; draps: " + std::to_string(draps_overloads) + " overloads" + fmt(", %.2f s", dt);
  return o;
}

Outcome shuffled_wins() {
  auto t0 = Clock::now();
  int wins = 0;
  std::string per_seed;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto s_cfg = scenario("idle100", SchedulerKind::Spread);
    shuffle_arrivals(s_cfg, seed);
    auto d_cfg = s_cfg;
    d_cfg.scheduler = SchedulerKind::Draps;
    auto s = run(s_cfg).summary;
    auto d = run(d_cfg).summary;
    bool win = max_peak_mem(d) < max_peak_mem(s) && d.peak_nu < s.peak_nu;
    wins += win;
    per_seed += win ? "+" : "-";
  }
  double dt = seconds_since(t0);
  Outcome o;
  o.pass = wins >= 8 && dt < 10.0;
  o.detail = std::to_string(wins) + "/10 seeds [" + per_seed + "]" + fmt(", %.2f s", dt);
  return o;
}

Outcome heartbeat_overhead() {
  auto d = run(scenario("idle100", SchedulerKind::Draps)).summary;
  auto s = run(scenario("idle100", SchedulerKind::Spread)).summary;
  Outcome o;
  o.pass = d.heartbeat_bytes > d.baseline_heartbeat_bytes &&
           s.heartbeat_bytes == s.baseline_heartbeat_bytes;
  o.detail = "draps " + std::to_string(d.heartbeat_bytes) + " B vs baseline " +
             std::to_string(d.baseline_heartbeat_bytes) + " B";
  return o;
}

Outcome oracle_bound() {
  ResourceVector big{1e12, 1e6, 1e12, 1e12};
  StaticInstance hand{{{3 * kGiB, 0, 0, 0}, {3 * kGiB, 0, 0, 0}, {3 * kGiB, 0, 0, 0}},
                      {{4 * kGiB, big.cpu, big.network, big.block_io},
                       {8 * kGiB, big.cpu, big.network, big.block_io}}};
  double hand_nu = brute_force_optimal_nu(hand).nu;
  bool ok = std::abs(hand_nu - 0.75) < 1e-12;

  std::mt19937_64 rng(20180);
  std::uniform_int_distribution<std::size_t> nc(1, 8), nw(1, 3);
  std::uniform_real_distribution<double> m(0.1, 4.0), c(0.01, 2.0), io(1e5, 5e7), g(2, 16);
  int violations = 0;
  for (int i = 0; i < 50; ++i) {
    StaticInstance inst;
    std::size_t w = nw(rng), n = nc(rng);
    for (std::size_t k = 0; k < w; ++k) inst.workers.push_back({g(rng) * kGiB, g(rng) / 2, 1.25e8, 1.5e8});
    for (std::size_t k = 0; k < n; ++k) inst.containers.push_back({m(rng) * kGiB, c(rng), io(rng), io(rng)});
    auto best = brute_force_optimal_nu(inst);
    if (best.nu != brute_force_optimal_nu_serial(inst).nu) ++violations;
    for (SchedulerKind kind : kAllSchedulers) {
      if (best.nu > static_nu(inst, heuristic_assignment(kind, inst, static_cast<std::uint64_t>(i))) + 1e-12) {
        ++violations;
      }
    }
  }
  Outcome o;
  o.pass = ok && violations == 0;
  o.detail = fmt("hand instance nu* = %.4f; ", hand_nu) + std::to_string(violations) +
             " violations over 50 random instances";
  return o;
}

Outcome invariant_suite() {
  auto t0 = Clock::now();
  int broken = 0;
  for (const char* name : {"idle100", "idle140", "idle140_reserved", "workloads"}) {
    for (SchedulerKind kind : kAllSchedulers) {
      auto cfg = scenario(name, kind);
      bool reserved = std::string(name) == "idle140_reserved";
      Simulation sim(cfg);
      while (sim.step()) {
        const auto& cl = sim.cluster();
        auto s = sim.summary();
        std::size_t hosted = 0;
        for (const auto& w : cl.workers()) {
          hosted += w.hosted.size();
          if (reserved) {
            ResourceVector sum;
            for (const auto& id : w.hosted) sum += *cl.service(cl.container(id).service).reservation;
            if (!sum.fits_within(w.capacity)) ++broken;
          }
        }
        if (hosted != cl.running().size() || cl.running().size() != s.placements - s.kills) ++broken;
      }
      auto a = sim.summary();
      if (a.placements + a.rejected != cfg.total_arrivals()) ++broken;
      if (reserved && a.kills != 0) ++broken;

      // Determinism: an identical rerun gives identical output.
      auto r1 = run(cfg), r2 = run(cfg);
      std::ostringstream m1, m2, e1, e2;
      write_metrics_csv(m1, r1);
      write_metrics_csv(m2, r2);
      write_events_csv(e1, r1.events, r1.tick_seconds);
      write_events_csv(e2, r2.events, r2.tick_seconds);
      if (m1.str() != m2.str() || e1.str() != e2.str()) ++broken;

      // Peak nu equals the max over per-tick cluster ratios.
      double peak = 0;
      for (const auto& rec : r1.metrics) {
        if (rec.alive) peak = std::max(peak, rec.worker_max);
      }
      if (peak != r1.summary.peak_nu) ++broken;

      // Every migration replaces exactly one instance and moves it elsewhere.
      std::size_t migrated_kills = 0;
      for (const auto& e : r1.events.events()) {
        if (e.type == EventType::Migrate && (e.from_worker == e.to_worker || e.to_worker.empty())) ++broken;
        if (e.type == EventType::Kill && e.detail == "migrated") ++migrated_kills;
      }
      if (migrated_kills != r1.summary.migrations) ++broken;
    }
  }

  // Dominant kind is unchanged by uniform scaling of the demand.
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0), scale(1e-3, 1e3);
  ResourceVector limits{28 * kGiB, 13, 3.75e8, 4.5e8};
  for (int i = 0; i < 1000; ++i) {
    ResourceVector d{u(rng) * kGiB, u(rng), u(rng) * 1e7, u(rng) * 1e7};
    if (dominant_kind(d, limits).kind != dominant_kind(d * scale(rng), limits).kind) ++broken;
  }
  double dt = seconds_since(t0);
  Outcome o;
  o.pass = broken == 0 && dt < 60.0;
  o.detail = std::to_string(broken) + " violations, " + fmt("%.2f s", dt);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_fixtures = argv[1];

  struct Criterion {
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria{
      {"spread balances 100 identical arrivals 34/33/33", spread_balance},
      {"spread overload cascade empties w1; draps avoids it", overload_cascade},
      {"draps beats spread on shuffled arrivals (>= 8/10 seeds)", shuffled_wins},
      {"draps heartbeats carry more bytes than the baseline", heartbeat_overhead},
      {"oracle lower-bounds every heuristic", oracle_bound},
      {"invariant suite under 60 s", invariant_suite},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s  %zu. %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                o.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed),
              criteria.size());
  return failed == 0 ? 0 : 1;
}
