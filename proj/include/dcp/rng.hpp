#pragma once

#include <cstdint>
#include <random>

namespace dcp {

// splitmix64 step; used to spread seeds before feeding mt19937_64 and to
// derive independent child streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Seeded PRNG. Uniform variates are built directly from raw engine output
// instead of std::uniform_*_distribution so that transcripts are identical
// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {
    std::uint64_t s = seed;
    engine_.seed(splitmix64(s));
  }

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  // [0,1), 53-bit resolution. Never returns 1.0, so bernoulli(1.0) is certain.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // [0,bound). Multiply-high map; bias is O(2^-64), irrelevant here.
  std::uint64_t uniform_below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Independent child stream; deterministic in (seed, index) only, so results
  // cannot depend on which thread consumes which index.
  Rng derive(std::uint64_t index) const {
    std::uint64_t s = seed_ ^ (0xa076bc9f7d2f13e5ull + index);
    std::uint64_t mixed = splitmix64(s);
    return Rng(splitmix64(s) ^ (mixed << 1) ^ index);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace dcp
