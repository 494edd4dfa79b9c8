#pragma once

// Portable random numbers.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. Standard distributions are implementation-defined, so every
// variate here is derived from raw engine output with explicit algorithms:
//
//   uniform    top 53 bits of one draw, scaled to [0,1)
//   bernoulli  uniform() < p
//   binomial   sum of n Bernoulli draws for n <= 64, inverse transform above
//   poisson    inverse transform
//
// Streams: replication r of a run seeded with `base` uses
// derive_seed(base, r) = splitmix64(base + (r + 1) * 0x9E3779B97F4A7C15).

#include <cstdint>
#include <random>

namespace bp2 {

/// One round of the splitmix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of stream `index` under `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  bool bernoulli(double p) { return uniform() < p; }
  std::uint64_t binomial(std::uint64_t n, double p);
  std::uint64_t poisson(double mean);

 private:
  std::mt19937_64 engine_;
};

}  // namespace bp2
