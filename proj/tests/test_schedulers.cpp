#include <doctest.h>

#include <map>
#include <random>
#include <vector>

#include "draps/error.hpp"
#include "draps/registry.hpp"
#include "draps/schedulers.hpp"
#include "helpers.hpp"

using namespace draps;
using draps::testing::make_service;
using draps::testing::make_worker;
using draps::testing::mem_gib;

namespace {

std::vector<WorkerNode> three_workers() {
  return {make_worker("w1", 4, 1), make_worker("w2", 8, 4), make_worker("w3", 16, 8)};
}

void host_n(WorkerNode& w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) w.hosted.insert(ContainerId(w.id.str() + "-" + std::to_string(i)));
}

CandidateList all_of(const std::vector<WorkerNode>& ws) {
  return apply_filters(make_service("s"), ws, {}, FilterSet::none());
}

/// Registry where service "s" is known and CPU-dominant.
KnownServiceRegistry cpu_known() {
  KnownServiceRegistry r({1, 6});
  r.add_service("s");
  r.record_usage("s", "c1", {0.01 * kGiB, 1.0, 0, 0}, 0);
  return r;
}

}  // namespace

TEST_CASE("apply_filters examples") {
  auto ws = three_workers();
  ServiceSpec task = make_service("s");
  CHECK(apply_filters(task, ws, {}, {}).size() == 3);

  ws[0].ready = false;
  ws[2].alive = false;
  auto c = apply_filters(task, ws, {}, {});
  REQUIRE(c.size() == 1);
  CHECK(c[0].get().id == WorkerId("w2"));
  // Readiness may be ignored; liveness may not.
  CHECK(apply_filters(task, ws, {}, FilterSet::none()).size() == 2);

  ws = three_workers();
  task.reservation = mem_gib(5);
  ResourceMap reserved{{"w2", mem_gib(4)}};
  c = apply_filters(task, ws, reserved, {});
  REQUIRE(c.size() == 1);
  CHECK(c[0].get().id == WorkerId("w3"));
  FilterSet no_resource;
  no_resource.resource = false;
  CHECK(apply_filters(task, ws, reserved, no_resource).size() == 3);

  task = make_service("s");
  task.required_plugins = {"gpu"};
  task.constraints = {"large"};
  ws[1].plugins = {"gpu"};
  ws[2].plugins = {"gpu", "nfs"};
  ws[2].labels = {"large"};
  c = apply_filters(task, ws, {}, {});
  REQUIRE(c.size() == 1);
  CHECK(c[0].get().id == WorkerId("w3"));
}

TEST_CASE("apply_filters returns ascending ids") {
  std::vector<WorkerNode> ws{make_worker("wc", 4), make_worker("wa", 4), make_worker("wb", 4)};
  auto c = apply_filters(make_service("s"), ws, {}, {});
  REQUIRE(c.size() == 3);
  CHECK(c[0].get().id == WorkerId("wa"));
  CHECK(c[2].get().id == WorkerId("wc"));
}

TEST_CASE("spread examples") {
  auto ws = three_workers();
  host_n(ws[0], 2);
  host_n(ws[1], 1);
  host_n(ws[2], 1);
  CHECK(place_spread(all_of(ws)) == WorkerId("w2"));
  CHECK(place_spread({}) == std::nullopt);

  ws = three_workers();
  PlacementInputs in;
  for (int i = 0; i < 100; ++i) {
    auto d = place(SchedulerKind::Spread, ContainerId("c" + std::to_string(i)), make_service("s"), ws, in);
    REQUIRE(d.assigned());
    for (auto& w : ws) {
      if (w.id == d.worker()) w.hosted.insert(d.container);
    }
  }
  CHECK(ws[0].hosted.size() == 34);
  CHECK(ws[1].hosted.size() == 33);
  CHECK(ws[2].hosted.size() == 33);
}

TEST_CASE("binpack examples") {
  auto ws = three_workers();
  host_n(ws[0], 2);
  host_n(ws[1], 1);
  host_n(ws[2], 1);
  CHECK(place_binpack(all_of(ws)) == WorkerId("w1"));

  ws = three_workers();
  CHECK(place_binpack(all_of(ws)) == WorkerId("w1"));
  host_n(ws[1], 1);
  CHECK(place_binpack(all_of(ws)) == WorkerId("w2"));
}

TEST_CASE("random examples") {
  auto ws = three_workers();
  std::vector<WorkerNode> one{ws[1]};
  Rng rng(1);
  for (int i = 0; i < 20; ++i) CHECK(place_random(all_of(one), rng) == WorkerId("w2"));
  CHECK(place_random({}, rng) == std::nullopt);

  Rng a(123), b(123);
  for (int i = 0; i < 50; ++i) CHECK(place_random(all_of(ws), a) == place_random(all_of(ws), b));

  PlacementInputs in;
  CHECK_THROWS_AS(place(SchedulerKind::Random, "c", make_service("s"), ws, in), Error);
}

TEST_CASE("random is uniform over candidates") {
  std::vector<WorkerNode> ws{make_worker("w1", 4), make_worker("w2", 4), make_worker("w3", 4),
                             make_worker("w4", 4)};
  auto cands = all_of(ws);
  Rng rng(2024);
  std::map<WorkerId, int> hits;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) ++hits[*place_random(cands, rng)];
  double chi2 = 0;
  for (const auto& w : ws) {
    CHECK(hits[w.id] > 2350);
    CHECK(hits[w.id] < 2650);
    double d = hits[w.id] - draws / 4.0;
    chi2 += d * d / (draws / 4.0);
  }
  // 3 degrees of freedom, p = 0.001.
  CHECK(chi2 < 16.27);
}

TEST_CASE("draps known service picks the most available dominant kind") {
  auto ws = three_workers();
  ResourceMap avail{{"w1", {1 * kGiB, 7.2, 1e8, 1e8}},
                    {"w2", {8 * kGiB, 3.1, 1e8, 1e8}},
                    {"w3", {16 * kGiB, 0.5, 1e8, 1e8}}};
  auto reg = cpu_known();
  ResourceVector limits{28 * kGiB, 13, 3.75e8, 4.5e8};
  CHECK(place_draps(make_service("s"), all_of(ws), reg, avail, limits) == WorkerId("w1"));
  CHECK(reg.cached_dominant("s") == ResourceKind::Cpu);

  // Equal availability ties to the smallest id.
  avail["w3"].cpu = 7.2;
  CHECK(place_draps(make_service("s"), all_of(ws), reg, avail, limits) == WorkerId("w1"));
}

TEST_CASE("draps unknown service maximizes the mean available fraction") {
  auto ws = three_workers();
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> f(0.0, 1.0);
  KnownServiceRegistry reg;
  reg.add_service("s");
  for (int trial = 0; trial < 100; ++trial) {
    ResourceMap avail;
    WorkerId expect;
    double best = -1;
    for (const auto& w : ws) {
      ResourceVector a{f(rng) * w.capacity.memory, f(rng) * w.capacity.cpu, f(rng) * w.capacity.network,
                       f(rng) * w.capacity.block_io};
      avail[w.id] = a;
      double score = (a.memory / w.capacity.memory + a.cpu / w.capacity.cpu +
                      a.network / w.capacity.network + a.block_io / w.capacity.block_io) / 4;
      if (score > best) {
        best = score;
        expect = w.id;
      }
    }
    CHECK(place_draps(make_service("s"), all_of(ws), reg, avail, {1, 1, 1, 1}) == expect);
  }

  // Missing entries count as fully available.
  ResourceMap partial{{"w1", mem_gib(1)}, {"w2", mem_gib(1)}};
  CHECK(place_draps(make_service("s"), all_of(ws), reg, partial, {1, 1, 1, 1}) == WorkerId("w3"));
}

TEST_CASE("draps with no candidates is rejected") {
  auto ws = three_workers();
  for (auto& w : ws) w.ready = false;
  KnownServiceRegistry reg;
  ResourceMap avail;
  PlacementInputs in;
  in.registry = &reg;
  in.availability = &avail;
  auto d = place(SchedulerKind::Draps, "c1", make_service("s"), ws, in);
  CHECK_FALSE(d.assigned());
  CHECK(d.reason() == "no-worker");
  in.availability = nullptr;
  CHECK_THROWS_AS(place(SchedulerKind::Draps, "c1", make_service("s"), ws, in), Error);
}

TEST_CASE("placement properties") {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<int> nw(1, 6), hosted(0, 5), coin(0, 3);
  std::uniform_real_distribution<double> f(0.0, 1.0), scale(0.1, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<WorkerNode> ws;
    int n = nw(rng);
    for (int i = 0; i < n; ++i) {
      auto w = make_worker("w" + std::to_string(i), 1 + 15 * f(rng), 1 + 7 * f(rng));
      w.ready = coin(rng) != 0;
      host_n(w, static_cast<std::size_t>(hosted(rng)));
      ws.push_back(w);
    }
    auto cands = apply_filters(make_service("s"), ws, {}, {});
    if (cands.empty()) {
      CHECK_FALSE(place(SchedulerKind::Spread, "c", make_service("s"), ws, {}).assigned());
      continue;
    }
    auto in_set = [&](const WorkerId& id) {
      for (const WorkerNode& w : cands) {
        if (w.id == id) return true;
      }
      return false;
    };
    auto count_of = [&](const WorkerId& id) {
      for (const WorkerNode& w : cands) {
        if (w.id == id) return w.hosted.size();
      }
      return std::size_t{0};
    };
    std::size_t lo = SIZE_MAX, hi = 0;
    for (const WorkerNode& w : cands) {
      lo = std::min(lo, w.hosted.size());
      hi = std::max(hi, w.hosted.size());
    }

    auto s = place_spread(cands);
    auto b = place_binpack(cands);
    Rng r(static_cast<std::uint64_t>(trial));
    auto x = place_random(cands, r);
    REQUIRE(s);
    REQUIRE(b);
    REQUIRE(x);
    CHECK(in_set(*s));
    CHECK(in_set(*b));
    CHECK(in_set(*x));
    CHECK(count_of(*s) == lo);
    CHECK(count_of(*b) == hi);

    // DRAPS: chosen worker has maximal dominant-kind availability, and the
    // choice survives scaling every availability by the same constant.
    auto reg = cpu_known();
    ResourceMap avail;
    for (const WorkerNode& w : cands) avail[w.id] = w.capacity * f(rng);
    ResourceVector limits{1 * kGiB, 1, 1, 1};
    auto d = place_draps(make_service("s"), cands, reg, avail, limits);
    REQUIRE(d);
    CHECK(in_set(*d));
    for (const WorkerNode& w : cands) CHECK(avail[d->str()].cpu >= avail[w.id].cpu);
    ResourceMap scaled = avail;
    double c = scale(rng);
    for (auto& [id, v] : scaled) v *= c;
    CHECK(place_draps(make_service("s"), cands, reg, scaled, limits) == d);
    CHECK(place_draps(make_service("s"), cands, reg, avail, limits) == d);
  }
}

TEST_CASE("heuristic_assignment is deterministic and complete") {
  StaticInstance inst{{mem_gib(1), mem_gib(2), mem_gib(3), mem_gib(1)},
                      {ResourceVector{4 * kGiB, 1, 1e8, 1e8}, ResourceVector{8 * kGiB, 4, 1e8, 1e8}}};
  for (SchedulerKind k : kAllSchedulers) {
    auto a = heuristic_assignment(k, inst, 5);
    CHECK(a == heuristic_assignment(k, inst, 5));
    CHECK(a.size() == 4);
    for (auto w : a) CHECK(w < 2);
  }
  CHECK(heuristic_assignment(SchedulerKind::Spread, inst, 0) == std::vector<std::size_t>{0, 1, 0, 1});
  CHECK(heuristic_assignment(SchedulerKind::Binpack, inst, 0) == std::vector<std::size_t>{0, 0, 0, 0});
}

TEST_CASE("scheduler names") {
  CHECK(parse_scheduler("DRAPS") == SchedulerKind::Draps);
  CHECK(parse_scheduler("spread") == SchedulerKind::Spread);
  CHECK(parse_scheduler("fifo") == std::nullopt);
  for (auto k : kAllSchedulers) CHECK(parse_scheduler(to_string(k)) == k);
}
