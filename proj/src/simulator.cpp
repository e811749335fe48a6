#include "draps/simulator.hpp"

#include <algorithm>
#include <cstdio>

#include <json.hpp>

#include "draps/error.hpp"

namespace draps {

std::uint64_t heartbeat_payload_size(bool enhanced, std::size_t reported_containers) {
  if (!enhanced) return kHeartbeatHeaderBytes;
  return kHeartbeatHeaderBytes + kHeartbeatPerContainerBytes * reported_containers;
}

bool memory_overloaded(const WorkerNode& worker, const UsageMap& demand) {
  double memory = 0.0;
  for (const auto& id : worker.hosted) {
    if (auto it = demand.find(id); it != demand.end()) memory += it->second.memory;
  }
  return memory > worker.capacity.memory;
}

std::optional<std::vector<ContainerId>> overload_check(Cluster& cluster, const WorkerId& worker_id,
                                                       const UsageMap& demand, EventLog& log,
                                                       Tick tick) {
  const WorkerNode& worker = cluster.worker(worker_id);
  if (!worker.alive || !memory_overloaded(worker, demand)) return std::nullopt;

  double memory = 0.0;
  for (const auto& id : worker.hosted) {
    if (auto it = demand.find(id); it != demand.end()) memory += it->second.memory;
  }
  char detail[96];
  std::snprintf(detail, sizeof detail, "memory demand %.0f > capacity %.0f", memory,
                worker.capacity.memory);
  log.append({tick, EventType::WorkerOverload, "", "", worker_id.str(), "", detail});

  std::vector<ContainerId> victims(worker.hosted.begin(), worker.hosted.end());
  for (const auto& id : victims) {
    std::string service = cluster.container(id).service.str();
    cluster.kill(id);
    log.append({tick, EventType::Kill, id.str(), service, worker_id.str(), "", "overload"});
  }
  return victims;
}

Simulation::Simulation(ScenarioConfig config)
    : config_((config.validate(), std::move(config))),
      registry_(RegistryConfig{config_.warmup_samples, config_.window_samples}),
      throttle_(config_.alert_cooldown_periods * config_.heartbeat_period_ticks),
      rng_(config_.seed) {
  for (const auto& w : config_.workers) {
    cluster_.add_worker(w);
    availability_[w.id] = w.capacity;
  }
  for (const auto& s : config_.services) {
    cluster_.add_service(s);
    registry_.add_service(s.id);
  }
}

UsageMap Simulation::usages_of(const WorkerNode& worker, const UsageMap& source) const {
  UsageMap out;
  for (const auto& id : worker.hosted) {
    if (auto it = source.find(id); it != source.end()) out.emplace(id, it->second);
  }
  return out;
}

bool Simulation::step() {
  if (tick_ >= config_.max_ticks) return false;
  replay_demand();
  check_overloads();
  if (enhanced()) examine_workers();
  if (tick_ % config_.heartbeat_period_ticks == 0) exchange_heartbeats();
  if (enhanced()) handle_alerts();
  place_arrivals();
  record_metrics();
  verify_conservation();
  ++tick_;
  return true;
}

SimulationResult Simulation::run() {
  while (step()) {
  }
  SimulationResult out;
  out.metrics = metrics_;
  out.events = events_;
  out.summary = summary();
  out.tick_seconds = config_.tick_seconds;
  return out;
}

void Simulation::replay_demand() {
  demand_.clear();
  usage_.clear();
  for (const auto& id : cluster_.running()) {
    const auto& c = cluster_.container(id);
    const auto& trace = config_.trace(cluster_.service(c.service).trace_id);
    demand_[id] = trace.at_tick(c.phase_offset, config_.tick_seconds);
    cluster_.advance_phase(id);
  }

  // Everything but memory is work-conserving: over-demand is scaled down to
  // what the worker can deliver.
  for (const auto& w : cluster_.workers()) {
    ResourceVector total;
    for (const auto& id : w.hosted) total += demand_.at(id);
    ResourceVector scale{1.0, 1.0, 1.0, 1.0};
    for (ResourceKind k : {ResourceKind::Cpu, ResourceKind::Network, ResourceKind::BlockIo}) {
      if (total[k] > w.capacity[k]) scale[k] = w.capacity[k] / total[k];
    }
    for (const auto& id : w.hosted) {
      ResourceVector u = demand_.at(id);
      for (ResourceKind k : kAllKinds) u[k] *= scale[k];
      usage_[id] = u;
      auto& window = windows_[id];
      window.sum += u;
      window.samples += 1;
    }
  }
}

void Simulation::release(const ContainerId& id) {
  const auto& c = cluster_.container(id);
  registry_.forget_container(c.service, id);
  windows_.erase(id);
  demand_.erase(id);
  usage_.erase(id);
  const auto& spec = cluster_.service(c.service);
  if (spec.reservation && c.worker) {
    auto& r = reservations_[*c.worker];
    r = (r - *spec.reservation).clamped();
  }
}

void Simulation::check_overloads() {
  for (const auto& w : cluster_.workers()) {
    auto killed = overload_check(cluster_, w.id, demand_, events_, tick_);
    if (!killed) continue;
    // Killed instances keep their worker field, which release() needs.
    for (const auto& id : *killed) release(id);
    overloads_ += 1;
    kills_ += killed->size();
  }
}

void Simulation::examine_workers() {
  for (const auto& w : cluster_.workers()) {
    if (!w.alive) continue;
    auto alert = self_examine(w, usages_of(w, usage_), config_.threshold, tick_);
    if (!alert || !throttle_.admit(w.id, tick_)) continue;
    events_.append({tick_, EventType::Alert, alert->container.str(),
                    cluster_.container(alert->container).service.str(), w.id.str(), "",
                    std::string(to_string(alert->bottleneck))});
    pending_alerts_.push_back(*alert);
    alerts_ += 1;
  }
}

std::vector<HeartbeatMsg> Simulation::emit_heartbeats() const {
  std::vector<HeartbeatMsg> out;
  for (const auto& w : cluster_.workers()) {
    if (!w.alive) continue;
    HeartbeatMsg msg;
    msg.worker = w.id;
    msg.tick = tick_;
    if (enhanced()) {
      ResourceVector used;
      for (const auto& id : w.hosted) {
        auto it = windows_.find(id);
        if (it == windows_.end() || it->second.samples == 0) continue;
        ResourceVector mean = it->second.sum * (1.0 / static_cast<double>(it->second.samples));
        msg.containers.push_back({id, mean});
        used += mean;
      }
      msg.available = (w.capacity - used).clamped();
    }
    msg.payload_size = heartbeat_payload_size(enhanced(), msg.containers.size());
    out.push_back(std::move(msg));
  }
  return out;
}

void Simulation::exchange_heartbeats() {
  last_heartbeats_ = emit_heartbeats();
  for (const auto& msg : last_heartbeats_) {
    heartbeat_bytes_ += msg.payload_size;
    baseline_bytes_ += heartbeat_payload_size(false, 0);
    if (!enhanced()) continue;
    for (const auto& cu : msg.containers) {
      registry_.record_usage(cluster_.container(cu.container).service, cu.container, cu.usage,
                             tick_);
    }
    availability_[msg.worker] = msg.available;
  }
  windows_.clear();
}

ResourceVector Simulation::usage_estimate(const ServiceId& service,
                                          const ContainerId& container) const {
  if (auto it = usage_.find(container); it != usage_.end()) return it->second;
  if (registry_.buffered_samples(service) > 0) return registry_.average_service_demand(service);
  const auto& spec = cluster_.service(service);
  return spec.reservation ? *spec.reservation : ResourceVector{};
}

void Simulation::handle_alerts() {
  auto alerts = std::move(pending_alerts_);
  pending_alerts_.clear();
  for (const auto& alert : alerts) {
    const auto& c = cluster_.container(alert.container);
    if (c.state != ContainerState::Running || c.worker != alert.worker) {
      events_.append({tick_, EventType::MigrateAbort, alert.container.str(), c.service.str(),
                      alert.worker.str(), "", "stale-alert"});
      aborts_ += 1;
      continue;
    }
    MigrationDecision decision =
        handle_alert(alert, cluster_, registry_, availability_, config_.filters, reservations_);
    const ServiceId service = c.service;
    ResourceVector estimate = usage_estimate(service, alert.container);

    auto fresh = execute_migration(cluster_, decision, events_, tick_);
    if (!fresh) {
      aborts_ += 1;
      continue;
    }
    release(alert.container);
    migrations_ += 1;
    const auto& spec = cluster_.service(service);
    if (spec.reservation) reservations_[*decision.to] += *spec.reservation;
    // The source keeps counting the old instance until its next heartbeat.
    availability_[*decision.to] = (availability_[*decision.to] - estimate).clamped();
  }
}

void Simulation::place_arrivals() {
  const auto& arrivals = config_.arrivals;
  while (next_arrival_ < arrivals.size() && arrivals[next_arrival_].tick <= tick_) {
    const Arrival& a = arrivals[next_arrival_++];
    const ServiceSpec& spec = cluster_.service(a.service);
    for (std::size_t i = 0; i < a.count; ++i) {
      ContainerId id = cluster_.create_container(a.service);
      PlacementInputs inputs;
      inputs.filters = config_.filters;
      inputs.reservations = &reservations_;
      inputs.registry = &registry_;
      inputs.availability = &availability_;
      inputs.rng = &rng_;
      PlacementDecision d = place(config_.scheduler, id, spec, cluster_.workers(), inputs);
      if (!d.assigned()) {
        cluster_.discard(id);
        events_.append({tick_, EventType::Reject, id.str(), a.service.str(), "", "", d.reason()});
        rejected_ += 1;
        continue;
      }
      const WorkerId& target = d.worker();
      cluster_.start(id, target);
      events_.append({tick_, EventType::Place, id.str(), a.service.str(), "", target.str(), ""});
      placements_ += 1;
      if (spec.reservation) reservations_[target] += *spec.reservation;
      if (enhanced()) {
        availability_[target] = (availability_[target] - usage_estimate(a.service, id)).clamped();
      }
    }
  }
}

void Simulation::record_metrics() {
  std::size_t first = metrics_.size();
  bool any_alive = false;
  for (const auto& w : cluster_.workers()) {
    metrics_.push_back(make_record(tick_, w, usages_of(w, usage_)));
    const auto& r = metrics_.back();
    peak_counts_[w.id] = std::max(peak_counts_[w.id], r.n_containers);
    if (!r.alive) continue;
    any_alive = true;
    peak_mem_ = std::max(peak_mem_, r.ratios[ResourceKind::Memory]);
    auto& pm = peak_mem_by_worker_[w.id];
    pm = std::max(pm, r.ratios[ResourceKind::Memory]);
  }
  if (!any_alive) return;
  double nu = cluster_nu(std::span<const UtilizationRecord>(metrics_).subspan(first));
  if (nu > peak_nu_) {
    peak_nu_ = nu;
    peak_nu_tick_ = tick_;
  }
  last_nu_ = nu;
}

void Simulation::verify_conservation() const {
  std::vector<ContainerInstance> containers;
  for (const auto& [_, c] : cluster_.containers()) {
    if (c.state == ContainerState::Running) containers.push_back(c);
  }
  for (const auto& v : check_constraints(containers, cluster_.workers(), {})) {
    if (v.kind != Violation::Kind::OverCapacity) {
      throw Error(ErrorCode::InvalidConfig,
                  "placement conservation broken for container " + v.container.str());
    }
  }
  for (const auto& c : containers) {
    if (!cluster_.worker(*c.worker).hosted.count(c.id) || !cluster_.worker(*c.worker).alive) {
      throw Error(ErrorCode::InvalidConfig, "container " + c.id.str() + " disagrees with its host");
    }
  }
}

Summary Simulation::summary() const {
  Summary s;
  s.scenario = config_.name;
  s.scheduler = config_.scheduler;
  s.seed = config_.seed;
  s.ticks = tick_;
  s.final_nu = last_nu_;
  s.peak_nu = peak_nu_;
  s.peak_nu_tick = peak_nu_tick_;
  s.peak_mem_util = peak_mem_;
  s.placements = placements_;
  s.rejected = rejected_;
  s.kills = kills_;
  s.overload_events = overloads_;
  s.alerts = alerts_;
  s.migrations = migrations_;
  s.migrate_aborts = aborts_;
  s.heartbeat_bytes = heartbeat_bytes_;
  s.baseline_heartbeat_bytes = baseline_bytes_;
  for (const auto& w : cluster_.workers()) s.final_counts[w.id] = w.hosted.size();
  s.peak_counts = peak_counts_;
  s.peak_mem_by_worker = peak_mem_by_worker_;
  return s;
}

SimulationResult run(const ScenarioConfig& config) { return Simulation(config).run(); }

void write_metrics_csv(std::ostream& out, const SimulationResult& result) {
  out << kMetricsCsvHeader << '\n';
  char line[256];
  for (const auto& r : result.metrics) {
    std::snprintf(line, sizeof line, "%g,%s,%.6f,%.6f,%.6f,%.6f,%.6f,%zu,%d\n",
                  static_cast<double>(r.tick) * result.tick_seconds, r.worker.str().c_str(),
                  r.ratios[ResourceKind::Memory], r.ratios[ResourceKind::Cpu],
                  r.ratios[ResourceKind::Network], r.ratios[ResourceKind::BlockIo], r.worker_max,
                  r.n_containers, r.alive ? 1 : 0);
    out << line;
  }
}

void write_summary_json(std::ostream& out, const Summary& s) {
  nlohmann::ordered_json j;
  j["scenario"] = s.scenario;
  j["scheduler"] = std::string(to_string(s.scheduler));
  j["seed"] = s.seed;
  j["ticks"] = s.ticks;
  j["final_nu"] = s.final_nu;
  j["peak_nu"] = s.peak_nu;
  j["peak_nu_tick"] = s.peak_nu_tick;
  j["peak_mem_util"] = s.peak_mem_util;
  j["placements"] = s.placements;
  j["rejected"] = s.rejected;
  j["kills"] = s.kills;
  j["overload_events"] = s.overload_events;
  j["alerts"] = s.alerts;
  j["migrations"] = s.migrations;
  j["migrate_aborts"] = s.migrate_aborts;
  j["heartbeat_bytes"] = s.heartbeat_bytes;
  j["baseline_heartbeat_bytes"] = s.baseline_heartbeat_bytes;
  j["heartbeat_accounting"] = "simulated: 64 B header + 32 B per reported container";
  auto per_worker = [](const auto& m) {
    nlohmann::ordered_json o = nlohmann::ordered_json::object();
    for (const auto& [id, v] : m) o[id.str()] = v;
    return o;
  };
  j["final_counts"] = per_worker(s.final_counts);
  j["peak_counts"] = per_worker(s.peak_counts);
  j["peak_mem_by_worker"] = per_worker(s.peak_mem_by_worker);
  out << j.dump(2) << '\n';
}

}  // namespace draps
