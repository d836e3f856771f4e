#pragma once

#include <cstdint>

namespace illume {

// SplitMix64 finalizer (Steele/Lea/Flood). All randomized machinery in this
// library derives from this single generator so runs are reproducible from
// one documented seed, independent of platform and thread schedule.
std::uint64_t mix64(std::uint64_t z);

// Key for an independent substream. Streams are tagged with up to three
// coordinates (e.g. subset size k, resample round, trial index) so parallel
// generation partitions the seed space instead of sharing a stateful engine.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                          std::uint64_t c = 0);

struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    return mix64(state);
  }

  // Exactly uniform on [0, bound) via masked rejection.
  std::uint64_t below(std::uint64_t bound);

  int sign() { return (next() & 1u) ? 1 : -1; }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

}  // namespace illume
