#include "draps/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "draps/error.hpp"

namespace draps {

using nlohmann::json;

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); };

  if (workers.empty()) fail("scenario has no workers");
  if (!(tick_seconds > 0.0)) fail("tick_seconds must be > 0");
  if (heartbeat_period_ticks < 1) fail("heartbeat_period_ticks must be >= 1");
  if (!(threshold > 0.0 && threshold < 1.0)) fail("threshold must lie in (0, 1)");
  if (alert_cooldown_periods < 0) fail("alert_cooldown_periods must be >= 0");
  if (window_samples < 1) fail("window_samples must be >= 1");
  if (max_ticks < 1) fail("max_ticks must be >= 1");

  std::set<WorkerId> worker_ids;
  for (const auto& w : workers) {
    if (w.id.str().empty()) fail("worker with empty id");
    if (!worker_ids.insert(w.id).second) fail("duplicate worker id " + w.id.str());
    if (!w.capacity.all_positive()) fail("worker " + w.id.str() + " needs positive capacity");
  }
  std::set<TraceId> trace_ids;
  for (const auto& t : traces) {
    if (!trace_ids.insert(t.id()).second) fail("duplicate trace id " + t.id().str());
  }
  std::set<ServiceId> service_ids;
  for (const auto& s : services) {
    if (!service_ids.insert(s.id).second) fail("duplicate service id " + s.id.str());
    if (!trace_ids.count(s.trace_id)) {
      fail("service " + s.id.str() + " references unknown trace " + s.trace_id.str());
    }
    if (s.reservation && !s.reservation->is_valid()) fail("service " + s.id.str() + " has an invalid reservation");
  }
  for (const auto& a : arrivals) {
    if (!service_ids.count(a.service)) fail("arrival references unknown service " + a.service.str());
    if (a.tick < 0 || a.tick >= max_ticks) {
      fail("arrival tick " + std::to_string(a.tick) + " outside [0, max_ticks)");
    }
  }
}

const DemandTrace& ScenarioConfig::trace(const TraceId& id) const {
  auto it = std::find_if(traces.begin(), traces.end(),
                         [&](const DemandTrace& t) { return t.id() == id; });
  if (it == traces.end()) throw Error(ErrorCode::InvalidConfig, "unknown trace " + id.str());
  return *it;
}

std::size_t ScenarioConfig::total_arrivals() const {
  std::size_t n = 0;
  for (const auto& a : arrivals) n += a.count;
  return n;
}

namespace {

double quantity(const json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_quantity(j.get<std::string>());
  throw Error(ErrorCode::InvalidConfig, what + " must be a number or a quantity string");
}

ResourceVector resource_vector(const json& j, const std::string& what) {
  ResourceVector v;
  if (j.is_array()) {
    if (j.size() != kNumKinds) {
      throw Error(ErrorCode::InvalidConfig, what + " must list 4 values [memory, cpu, network, block_io]");
    }
    for (std::size_t k = 0; k < kNumKinds; ++k) v[kAllKinds[k]] = quantity(j[k], what);
  } else if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      auto kind = parse_kind(key);
      if (!kind) throw Error(ErrorCode::InvalidConfig, what + ": unknown resource '" + key + "'");
      v[*kind] = quantity(value, what);
    }
  } else {
    throw Error(ErrorCode::InvalidConfig, what + " must be an array or an object");
  }
  if (!v.is_valid()) throw Error(ErrorCode::InvalidConfig, what + " has a negative or non-finite component");
  return v;
}

std::set<std::string> string_set(const json& j, const char* key) {
  std::set<std::string> out;
  if (auto it = j.find(key); it != j.end()) {
    for (const auto& s : *it) out.insert(s.get<std::string>());
  }
  return out;
}

template <class T>
T value_or(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : it->get<T>();
}

DemandTrace parse_trace(const json& j, const std::filesystem::path& base_dir,
                        std::map<std::filesystem::path, TraceTable>& table_cache) {
  TraceId id(j.at("id").get<std::string>());
  if (auto file = j.find("file"); file != j.end()) {
    auto path = base_dir / file->get<std::string>();
    auto it = table_cache.find(path);
    if (it == table_cache.end()) it = table_cache.emplace(path, read_trace_csv(path)).first;
    ServiceId service(value_or<std::string>(j, "service", id.str()));
    return trace_for_service(it->second, service, id);
  }
  double interval = value_or<double>(j, "sample_interval_s", 1.0);
  std::vector<ResourceVector> samples;
  for (const auto& s : j.at("samples")) {
    std::size_t repeat = 1;
    const json* vec = &s;
    // {"repeat": n, "value": [...]} holds a sample for n intervals.
    if (s.is_object() && s.contains("repeat")) {
      repeat = s.at("repeat").get<std::size_t>();
      vec = &s.at("value");
    }
    ResourceVector v = resource_vector(*vec, "trace " + id.str() + " sample");
    samples.insert(samples.end(), repeat, v);
  }
  return DemandTrace(id, interval, std::move(samples));
}

std::vector<Arrival> expand_pattern(const json& p, const std::vector<ServiceSpec>& services) {
  std::vector<ServiceId> order;
  if (auto it = p.find("services"); it != p.end()) {
    for (const auto& s : *it) order.emplace_back(s.get<std::string>());
  } else {
    for (const auto& s : services) order.push_back(s.id);
  }
  auto start = value_or<Tick>(p, "start_tick", 0);
  auto interval = value_or<Tick>(p, "interval_ticks", 5);
  auto per_service = value_or<std::size_t>(p, "per_service", 1);
  auto limit = value_or<std::size_t>(p, "total", order.size() * per_service);
  auto mode = value_or<std::string>(p, "order", "round_robin");
  if (order.empty() || interval < 0) throw Error(ErrorCode::InvalidConfig, "bad arrival_pattern");

  std::vector<ServiceId> sequence;
  if (mode == "round_robin") {
    for (std::size_t round = 0; round < per_service; ++round) {
      for (const auto& s : order) sequence.push_back(s);
    }
  } else if (mode == "grouped") {
    for (const auto& s : order) sequence.insert(sequence.end(), per_service, s);
  } else {
    throw Error(ErrorCode::InvalidConfig, "arrival_pattern.order must be round_robin or grouped");
  }
  sequence.resize(std::min(limit, sequence.size()));

  std::vector<Arrival> out;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    out.push_back({start + static_cast<Tick>(i) * interval, sequence[i], 1});
  }
  return out;
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("scenario is not valid JSON: ") + e.what());
  }

  ScenarioConfig cfg;
  try {
    cfg.name = value_or<std::string>(doc, "name", "scenario");
    cfg.seed = value_or<std::uint64_t>(doc, "seed", cfg.seed);
    cfg.tick_seconds = value_or<double>(doc, "tick_seconds", cfg.tick_seconds);
    cfg.heartbeat_period_ticks = value_or<Tick>(doc, "heartbeat_period_ticks", cfg.heartbeat_period_ticks);
    cfg.threshold = value_or<double>(doc, "threshold", cfg.threshold);
    cfg.alert_cooldown_periods = value_or<Tick>(doc, "alert_cooldown_periods", cfg.alert_cooldown_periods);
    cfg.warmup_samples = value_or<std::size_t>(doc, "warmup_samples", cfg.warmup_samples);
    cfg.window_samples = value_or<std::size_t>(doc, "window_samples", cfg.window_samples);
    cfg.max_ticks = value_or<Tick>(doc, "max_ticks", cfg.max_ticks);

    auto scheduler = value_or<std::string>(doc, "scheduler", "spread");
    auto kind = parse_scheduler(scheduler);
    if (!kind) throw Error(ErrorCode::InvalidConfig, "unknown scheduler '" + scheduler + "'");
    cfg.scheduler = *kind;

    if (auto f = doc.find("filters"); f != doc.end()) {
      cfg.filters.ready = value_or<bool>(*f, "ready", true);
      cfg.filters.resource = value_or<bool>(*f, "resource", true);
      cfg.filters.plugin = value_or<bool>(*f, "plugin", true);
      cfg.filters.constraint = value_or<bool>(*f, "constraint", true);
    }

    for (const auto& w : doc.at("workers")) {
      WorkerNode node;
      node.id = WorkerId(w.at("id").get<std::string>());
      node.capacity = resource_vector(w.at("capacity"), "worker " + node.id.str() + " capacity");
      node.ready = value_or<bool>(w, "ready", true);
      node.labels = string_set(w, "labels");
      node.plugins = string_set(w, "plugins");
      cfg.workers.push_back(std::move(node));
    }

    std::map<std::filesystem::path, TraceTable> table_cache;
    for (const auto& t : doc.at("traces")) cfg.traces.push_back(parse_trace(t, base_dir, table_cache));

    for (const auto& s : doc.at("services")) {
      ServiceSpec spec;
      spec.id = ServiceId(s.at("id").get<std::string>());
      spec.trace_id = TraceId(value_or<std::string>(s, "trace", spec.id.str()));
      auto mode = value_or<std::string>(s, "mode", "replicated");
      if (mode == "global") spec.mode = ServiceMode::Global;
      else if (mode != "replicated") throw Error(ErrorCode::InvalidConfig, "unknown service mode " + mode);
      if (auto r = s.find("reservation"); r != s.end()) {
        spec.reservation = resource_vector(*r, "service " + spec.id.str() + " reservation");
      }
      spec.constraints = string_set(s, "constraints");
      spec.required_plugins = string_set(s, "required_plugins");
      cfg.services.push_back(std::move(spec));
    }

    if (auto a = doc.find("arrivals"); a != doc.end()) {
      for (const auto& entry : *a) {
        cfg.arrivals.push_back({entry.at("tick").get<Tick>(),
                                ServiceId(entry.at("service").get<std::string>()),
                                value_or<std::size_t>(entry, "count", 1)});
      }
    }
    if (auto p = doc.find("arrival_pattern"); p != doc.end()) {
      auto extra = expand_pattern(*p, cfg.services);
      cfg.arrivals.insert(cfg.arrivals.end(), extra.begin(), extra.end());
    }
    std::stable_sort(cfg.arrivals.begin(), cfg.arrivals.end(),
                     [](const Arrival& x, const Arrival& y) { return x.tick < y.tick; });

    if (value_or<bool>(doc, "reserve_trace_peaks", false)) reserve_trace_peaks(cfg);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("scenario field error: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open scenario " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.parent_path());
}

void shuffle_arrivals(ScenarioConfig& config, std::uint64_t seed) {
  std::vector<Arrival> slots;
  for (const auto& a : config.arrivals) {
    for (std::size_t i = 0; i < a.count; ++i) slots.push_back({a.tick, a.service, 1});
  }
  std::vector<ServiceId> labels;
  for (const auto& s : slots) labels.push_back(s.service);
  Rng rng(seed);
  // Fisher-Yates with our own index draws so the permutation only depends on
  // the engine, not on the standard library's shuffle.
  for (std::size_t i = labels.size(); i > 1; --i) {
    std::swap(labels[i - 1], labels[rng.uniform_index(i)]);
  }
  for (std::size_t i = 0; i < slots.size(); ++i) slots[i].service = labels[i];
  config.arrivals = std::move(slots);
}

void reserve_trace_peaks(ScenarioConfig& config) {
  for (auto& s : config.services) s.reservation = config.trace(s.trace_id).peak();
}

}  // namespace draps
