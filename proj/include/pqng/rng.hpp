#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace pqng {

// SplitMix64 step (Vigna). Used for seed mixing and stream derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Folds path components (run index, tile coordinates, ...) into a seed so
// that parallel work items draw from independent streams whose identity does
// not depend on scheduling or evaluation order.
inline std::uint64_t derive_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t state = seed;
  std::uint64_t h = splitmix64(state);
  for (std::uint64_t component : path) {
    state = h ^ (component + 0x9e3779b97f4a7c15ull);
    h = splitmix64(state);
  }
  return h;
}

// Per-run random stream: a mt19937_64 engine seeded from a derived value.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  long long binomial(long long trials, double p) {
    if (trials <= 0 || p <= 0.0) return 0;
    if (p >= 1.0) return trials;
    std::binomial_distribution<long long> dist(trials, p);
    return dist(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
};

}  // namespace pqng
