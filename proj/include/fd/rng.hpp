#pragma once

#include <cmath>
#include <cstdint>

namespace fd {

// splitmix64; used everywhere so results do not depend on the platform's
// std::uniform_* implementations.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform in {0, ..., n-1}; n > 0
  std::uint32_t next_below(std::uint32_t n) {
    return static_cast<std::uint32_t>(next_u64() % n);
  }

  // standard exponential via inverse CDF
  double next_exponential() { return -std::log1p(-next_double()); }

  // stream derivation: independent substreams from (seed, index...) tuples
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t a) {
    return splitmix64(seed ^ splitmix64(a));
  }
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return derive(derive(seed, a), b);
  }

 private:
  std::uint64_t state_;
};

}  // namespace fd
