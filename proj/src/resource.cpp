#include "draps/resource.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>

#include "draps/error.hpp"

namespace draps {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidCapacity: return "invalid-capacity";
    case ErrorCode::InvalidVector: return "invalid-vector";
    case ErrorCode::EmptyInput: return "empty-input";
    case ErrorCode::UnknownService: return "unknown-service";
    case ErrorCode::UnknownDemand: return "unknown-demand";
    case ErrorCode::UnknownContainer: return "unknown-container";
    case ErrorCode::UnknownWorker: return "unknown-worker";
    case ErrorCode::NotHosted: return "not-hosted";
    case ErrorCode::BoundExceeded: return "bound-exceeded";
    case ErrorCode::InvalidConfig: return "invalid-config";
    case ErrorCode::ParseError: return "parse-error";
  }
  return "unknown";
}

std::string_view to_string(ResourceKind kind) {
  switch (kind) {
    case ResourceKind::Memory: return "Memory";
    case ResourceKind::Cpu: return "Cpu";
    case ResourceKind::Network: return "Network";
    case ResourceKind::BlockIo: return "BlockIo";
  }
  return "?";
}

std::optional<ResourceKind> parse_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "memory" || lower == "mem") return ResourceKind::Memory;
  if (lower == "cpu") return ResourceKind::Cpu;
  if (lower == "network" || lower == "net") return ResourceKind::Network;
  if (lower == "blockio" || lower == "block_io" || lower == "blk") return ResourceKind::BlockIo;
  return std::nullopt;
}

double ResourceVector::operator[](ResourceKind kind) const {
  switch (kind) {
    case ResourceKind::Memory: return memory;
    case ResourceKind::Cpu: return cpu;
    case ResourceKind::Network: return network;
    case ResourceKind::BlockIo: return block_io;
  }
  return 0.0;
}

double& ResourceVector::operator[](ResourceKind kind) {
  switch (kind) {
    case ResourceKind::Memory: return memory;
    case ResourceKind::Cpu: return cpu;
    case ResourceKind::Network: return network;
    case ResourceKind::BlockIo: return block_io;
  }
  return memory;
}

ResourceVector& ResourceVector::operator+=(const ResourceVector& o) {
  memory += o.memory;
  cpu += o.cpu;
  network += o.network;
  block_io += o.block_io;
  return *this;
}

ResourceVector& ResourceVector::operator-=(const ResourceVector& o) {
  memory -= o.memory;
  cpu -= o.cpu;
  network -= o.network;
  block_io -= o.block_io;
  return *this;
}

ResourceVector& ResourceVector::operator*=(double s) {
  memory *= s;
  cpu *= s;
  network *= s;
  block_io *= s;
  return *this;
}

bool ResourceVector::is_valid() const {
  return std::all_of(kAllKinds.begin(), kAllKinds.end(), [this](ResourceKind k) {
    double x = (*this)[k];
    return std::isfinite(x) && x >= 0.0;
  });
}

const ResourceVector& ResourceVector::validate() const {
  if (!is_valid()) {
    throw Error(ErrorCode::InvalidVector,
                "resource vector components must be finite and non-negative");
  }
  return *this;
}

bool ResourceVector::all_positive() const {
  return std::all_of(kAllKinds.begin(), kAllKinds.end(), [this](ResourceKind k) {
    double x = (*this)[k];
    return std::isfinite(x) && x > 0.0;
  });
}

bool ResourceVector::fits_within(const ResourceVector& limit) const {
  return std::all_of(kAllKinds.begin(), kAllKinds.end(),
                     [&](ResourceKind k) { return (*this)[k] <= limit[k]; });
}

ResourceVector ResourceVector::clamped() const {
  return {std::max(0.0, memory), std::max(0.0, cpu), std::max(0.0, network),
          std::max(0.0, block_io)};
}

double RatioVector::max() const { return *std::max_element(values.begin(), values.end()); }

double RatioVector::mean() const {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(kNumKinds);
}

ResourceKind RatioVector::argmax() const {
  std::size_t best = 0;
  for (std::size_t k = 1; k < kNumKinds; ++k) {
    if (values[k] > values[best]) best = k;
  }
  return static_cast<ResourceKind>(best);
}

ResourceKind RatioVector::argmin() const {
  std::size_t best = 0;
  for (std::size_t k = 1; k < kNumKinds; ++k) {
    if (values[k] < values[best]) best = k;
  }
  return static_cast<ResourceKind>(best);
}

RatioVector vector_normalize(const ResourceVector& v, const ResourceVector& limits) {
  if (!limits.all_positive()) {
    throw Error(ErrorCode::InvalidCapacity, "limit components must be > 0");
  }
  RatioVector out;
  for (ResourceKind k : kAllKinds) out[k] = v[k] / limits[k];
  return out;
}

ResourceVector vector_mean(std::span<const ResourceVector> vs) {
  if (vs.empty()) throw Error(ErrorCode::EmptyInput, "mean of an empty list");
  ResourceVector sum;
  for (const auto& v : vs) sum += v;
  return sum * (1.0 / static_cast<double>(vs.size()));
}

double parse_quantity(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw Error(ErrorCode::ParseError, "empty quantity");

  std::string buf(text);
  char* end = nullptr;
  double value = std::strtod(buf.c_str(), &end);
  if (end == buf.c_str()) throw Error(ErrorCode::ParseError, "not a number: " + buf);
  std::string suffix(end);
  std::transform(suffix.begin(), suffix.end(), suffix.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });

  double scale = 1.0;
  if (suffix.empty() || suffix == "b") scale = 1.0;
  else if (suffix == "kib" || suffix == "ki") scale = kKiB;
  else if (suffix == "mib" || suffix == "mi") scale = kMiB;
  else if (suffix == "gib" || suffix == "gi") scale = kGiB;
  else if (suffix == "kb" || suffix == "k") scale = 1e3;
  else if (suffix == "mb" || suffix == "m") scale = 1e6;
  else if (suffix == "gb" || suffix == "g") scale = 1e9;
  else throw Error(ErrorCode::ParseError, "unknown unit suffix in '" + buf + "'");

  double out = value * scale;
  if (!std::isfinite(out)) throw Error(ErrorCode::ParseError, "non-finite quantity: " + buf);
  return out;
}

}  // namespace draps
