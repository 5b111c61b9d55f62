#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace met {

// SplitMix64 finalizer. Frozen: every random artifact in the repo depends on
// this exact mixing, so it must never change.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// FNV-1a, used to turn experiment names into seed labels.
constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

// Labeled derivation of per-trial child seeds from one master seed. Streams
// derived for distinct labels are independent for all practical purposes, and
// a trial's stream never depends on how many other trials ran before it.
struct SeedSpec {
  std::uint64_t master = 0;
  std::uint64_t experiment = 0;
  std::uint64_t n_label = 0;
  std::uint64_t p_index = 0;
  std::uint64_t trial_index = 0;

  constexpr std::uint64_t derive() const {
    std::uint64_t h = mix64(master);
    h = mix64(h ^ experiment);
    h = mix64(h ^ n_label);
    h = mix64(h ^ p_index);
    h = mix64(h ^ trial_index);
    return h;
  }
};

// Deterministic variate stream: std::mt19937_64 seeded from SeedSpec::derive().
// Variates are mapped from raw 64-bit outputs explicitly (no std::*_distribution,
// whose mappings are implementation-defined), so identical seeds give identical
// graphs on every platform.
class RandomStream {
 public:
  explicit RandomStream(const SeedSpec& seed) : gen_(seed.derive()) {}
  explicit RandomStream(std::uint64_t raw_seed) : gen_(raw_seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0,1): top 53 bits over 2^53.
  double next_unit() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0,bound) via 128-bit multiply-shift; bound >= 1.
  std::uint64_t next_below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(gen_()) * bound) >> 64);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace met
