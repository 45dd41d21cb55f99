#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

// Seeded randomness helpers. Everything here is pinned to mt19937_64 plus
// hand-rolled sampling, because the standard library distributions are not
// bit-reproducible across implementations and reports must be byte-identical
// on re-runs.

namespace elsmark::rng {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// 64-bit finalizer with full avalanche (same mixer as splitmix64).
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Child seed for work unit (a, b) under a master seed. Used so parallel
// harness units draw independent, reproducible streams.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0) {
  std::uint64_t s = master;
  std::uint64_t h = splitmix64(s);
  h ^= mix64(a + 0x9e3779b97f4a7c15ULL);
  h = mix64(h);
  h ^= mix64(b + 0xc2b2ae3d27d4eb4fULL);
  return mix64(h);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t u64() { return eng_(); }

  // Uniform in [0, n), unbiased via rejection. n >= 1.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % n;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double real() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  char letter() { return static_cast<char>('a' + below(26)); }

  template <typename T>
  void shuffle(std::span<T> xs) {
    for (std::size_t i = xs.size(); i > 1; --i) {
      std::swap(xs[i - 1], xs[below(i)]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace elsmark::rng
