#include "draps/trace.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "draps/error.hpp"

namespace draps {

DemandTrace::DemandTrace(TraceId id, double sample_interval_s,
                         std::vector<ResourceVector> samples)
    : id_(std::move(id)), sample_interval_(sample_interval_s), samples_(std::move(samples)) {
  if (samples_.empty()) {
    throw Error(ErrorCode::EmptyInput, "trace '" + id_.str() + "' has no samples");
  }
  if (!(sample_interval_ > 0.0) || !std::isfinite(sample_interval_)) {
    throw Error(ErrorCode::InvalidConfig,
                "trace '" + id_.str() + "' needs a positive sample interval");
  }
  for (const auto& s : samples_) s.validate();
}

const ResourceVector& DemandTrace::at_seconds(double elapsed_s) const {
  if (elapsed_s <= 0.0) return samples_.front();
  // Small epsilon so that 15 s / 5 s lands on index 3 despite rounding.
  auto index = static_cast<std::size_t>(std::floor(elapsed_s / sample_interval_ + 1e-9));
  return samples_[std::min(index, samples_.size() - 1)];
}

ResourceVector DemandTrace::peak() const {
  ResourceVector out;
  for (const auto& s : samples_) {
    for (ResourceKind k : kAllKinds) out[k] = std::max(out[k], s[k]);
  }
  return out;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

double parse_number(const std::string& field, std::size_t line_no, const char* column) {
  std::string f = trim(field);
  char* end = nullptr;
  double v = std::strtod(f.c_str(), &end);
  if (f.empty() || end != f.c_str() + f.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad " +
                                           column + " value '" + f + "'");
  }
  return v;
}

struct Counters {
  double tick_s;
  double net;
  double blk;
};

}  // namespace

TraceTable read_trace_csv(std::istream& in) {
  TraceTable table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::map<ContainerId, Counters> last;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    if (!have_header) {
      if (trim(line) != kTraceCsvHeader) {
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line_no) + ": expected header '" +
                        kTraceCsvHeader + "'");
      }
      have_header = true;
      continue;
    }
    auto fields = split_csv(line);
    if (fields.size() != 9) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 9 fields, got " +
                                             std::to_string(fields.size()));
    }
    UsageSample s;
    s.tick_s = parse_number(fields[0], line_no, "tick_s");
    s.container = trim(fields[1]);
    s.service = trim(fields[2]);
    if (s.container.str().empty() || s.service.str().empty()) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + ": empty container or service");
    }
    double cpu_pct = parse_number(fields[3], line_no, "cpu_pct");
    double mem = parse_number(fields[4], line_no, "mem_bytes");
    double net = parse_number(fields[5], line_no, "net_rx_bytes") +
                 parse_number(fields[6], line_no, "net_tx_bytes");
    double blk = parse_number(fields[7], line_no, "blk_read_bytes") +
                 parse_number(fields[8], line_no, "blk_write_bytes");
    if (cpu_pct < 0 || mem < 0 || net < 0 || blk < 0) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": negative value");
    }

    s.usage.cpu = cpu_pct / 100.0;
    s.usage.memory = mem;
    if (auto it = last.find(s.container); it != last.end()) {
      double dt = s.tick_s - it->second.tick_s;
      if (!(dt > 0.0)) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) +
                                               ": tick_s not increasing for container " +
                                               s.container.str());
      }
      double dnet = net - it->second.net;
      double dblk = blk - it->second.blk;
      if (dnet < 0 || dblk < 0) {
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line_no) + ": cumulative counter decreased");
      }
      s.usage.network = dnet / dt;
      s.usage.block_io = dblk / dt;
    }
    last[s.container] = {s.tick_s, net, blk};

    if (std::find(table.services.begin(), table.services.end(), s.service) == table.services.end()) {
      table.services.push_back(s.service);
    }
    table.samples.push_back(std::move(s));
  }
  if (!have_header) throw Error(ErrorCode::ParseError, "line 1: missing header");
  return table;
}

TraceTable read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open trace file " + path.string());
  return read_trace_csv(in);
}

DemandTrace trace_for_service(const TraceTable& table, const ServiceId& service,
                              const TraceId& trace_id) {
  std::map<double, std::pair<ResourceVector, int>> by_tick;
  for (const auto& s : table.samples) {
    if (s.service != service) continue;
    auto& slot = by_tick[s.tick_s];
    slot.first += s.usage;
    slot.second += 1;
  }
  if (by_tick.empty()) {
    throw Error(ErrorCode::UnknownService, "no rows for service " + service.str());
  }
  double interval = std::numeric_limits<double>::infinity();
  double prev = std::numeric_limits<double>::quiet_NaN();
  std::vector<ResourceVector> samples;
  for (const auto& [tick, slot] : by_tick) {
    if (!std::isnan(prev)) interval = std::min(interval, tick - prev);
    prev = tick;
    samples.push_back(slot.first * (1.0 / slot.second));
  }
  if (!std::isfinite(interval)) interval = 1.0;
  return DemandTrace(trace_id, interval, std::move(samples));
}

}  // namespace draps
