#pragma once

#include <cstdint>
#include <string_view>

namespace tdc {

// Deterministic, platform-independent random stream (splitmix64).
// std::mt19937 output is portable but the standard distributions are not,
// so all draws go through this.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound), bound > 0. Rejection sampling, no modulo bias.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = -bound % bound;
    for (;;) {
      std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform double in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool next_bool() { return (next_u64() & 1u) != 0; }

 private:
  std::uint64_t state_;
};

// FNV-1a 64-bit; used both for input-file digests and for deriving
// independent subsystem seeds from the single top-level seed.
inline std::uint64_t fnv1a64(std::string_view data,
                             std::uint64_t h = 0xCBF29CE484222325ULL) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) {
  std::uint64_t h = fnv1a64(tag);
  // Mix the seed through one splitmix round so tag and seed both diffuse.
  Rng r(seed ^ h);
  return r.next_u64();
}

}  // namespace tdc
