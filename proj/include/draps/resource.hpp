#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace draps {

/// The four resource dimensions, in the canonical order used for every
/// tie-break over kinds.
enum class ResourceKind : std::size_t { Memory = 0, Cpu = 1, Network = 2, BlockIo = 3 };

inline constexpr std::size_t kNumKinds = 4;
inline constexpr std::array<ResourceKind, kNumKinds> kAllKinds = {
    ResourceKind::Memory, ResourceKind::Cpu, ResourceKind::Network,
    ResourceKind::BlockIo};

std::string_view to_string(ResourceKind kind);
std::optional<ResourceKind> parse_kind(std::string_view name);

/// Amounts of each resource kind.
///
/// Units: memory in bytes, cpu in cores (1.0 is one full core), network and
/// block I/O in bytes per second. Components are finite and non-negative;
/// use validate() on values that come from outside the library.
struct ResourceVector {
  double memory = 0.0;
  double cpu = 0.0;
  double network = 0.0;
  double block_io = 0.0;

  double operator[](ResourceKind kind) const;
  double& operator[](ResourceKind kind);

  ResourceVector& operator+=(const ResourceVector& other);
  ResourceVector& operator-=(const ResourceVector& other);
  ResourceVector& operator*=(double scale);

  friend ResourceVector operator+(ResourceVector a, const ResourceVector& b) { return a += b; }
  friend ResourceVector operator-(ResourceVector a, const ResourceVector& b) { return a -= b; }
  friend ResourceVector operator*(ResourceVector a, double s) { return a *= s; }
  friend ResourceVector operator*(double s, ResourceVector a) { return a *= s; }
  friend bool operator==(const ResourceVector&, const ResourceVector&) = default;

  bool is_valid() const;
  /// Throws Error(InvalidVector) unless every component is finite and >= 0.
  const ResourceVector& validate() const;
  bool all_positive() const;
  /// Component-wise a <= b.
  bool fits_within(const ResourceVector& limit) const;
  /// Component-wise max(0, x).
  ResourceVector clamped() const;
};

/// Per-kind fractions, e.g. utilization or normalized demand. May exceed 1.
struct RatioVector {
  std::array<double, kNumKinds> values{};

  double operator[](ResourceKind kind) const { return values[static_cast<std::size_t>(kind)]; }
  double& operator[](ResourceKind kind) { return values[static_cast<std::size_t>(kind)]; }
  friend bool operator==(const RatioVector&, const RatioVector&) = default;

  double max() const;
  double mean() const;
  /// Kind with the largest value; ties go to the earliest kind.
  ResourceKind argmax() const;
  /// Kind with the smallest value; ties go to the earliest kind.
  ResourceKind argmin() const;
};

/// v_k / limits_k for each kind. Throws Error(InvalidCapacity) if any limit
/// component is not strictly positive.
RatioVector vector_normalize(const ResourceVector& v, const ResourceVector& limits);

/// Component-wise arithmetic mean. Throws Error(EmptyInput) on an empty span.
ResourceVector vector_mean(std::span<const ResourceVector> vs);

/// Parses "4GiB", "512MiB", "1.5e9", "125MB" etc. into a plain number.
/// Binary (KiB/MiB/GiB) and decimal (KB/MB/GB) suffixes are accepted.
double parse_quantity(std::string_view text);

inline constexpr double kKiB = 1024.0;
inline constexpr double kMiB = 1024.0 * kKiB;
inline constexpr double kGiB = 1024.0 * kMiB;

}  // namespace draps
