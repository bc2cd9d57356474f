#pragma once
// Core fixed-point cost type, small vector types and RNG helpers shared by
// the expanded-graph builders, solvers and generators.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace hdpcg {

// Costs are scaled integers with two decimal digits so that structured cost
// fields (0.25, 0.3, 0.1, ...) compose with exact equality.
using Cost = long long;
inline constexpr Cost kCostScale = 100;
inline constexpr Cost kCostInf = (1LL << 60);

inline Cost cost_from(double v) {
  return static_cast<Cost>(v < 0 ? v * kCostScale - 0.5 : v * kCostScale + 0.5);
}
inline double cost_to_double(Cost c) { return static_cast<double>(c) / kCostScale; }

struct V3 {
  int x = 0, y = 0, z = 0;
  friend bool operator==(const V3&, const V3&) = default;
};

inline int l1(const V3& a, const V3& b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y) + std::abs(a.z - b.z);
}

struct V2 {
  int x = 0, y = 0;
  friend bool operator==(const V2&, const V2&) = default;
};

inline int l1(const V2& a, const V2& b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

// Closed attribute alphabet for grounded grids.
enum class Attr : std::uint8_t {
  Empty = 0,
  Solid,
  SwitchSite,
  PlatformEndpoint,
  PlatformTrack,
  ObstacleTrack,
  Start,
  Goal,
};

using Rng = std::mt19937_64;

inline int rand_int(Rng& rng, int lo, int hi) {  // inclusive
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}
inline double rand_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// A generation attempt that failed legitimately (resampled by callers).
struct GenerationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// FNV-1a, used for determinism hashes over serialized run records.
struct Fnv64 {
  std::uint64_t h = 1469598103934665603ULL;
  void add(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= p[i];
      h *= 1099511628211ULL;
    }
  }
  void add(const std::string& s) { add(s.data(), s.size()); }
  void add_i64(long long v) { add(&v, sizeof v); }
};

}  // namespace hdpcg
