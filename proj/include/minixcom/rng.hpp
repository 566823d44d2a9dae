#pragma once

#include <cstdint>
#include <initializer_list>

namespace minixcom {

inline uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// splitmix64. Small, fast, and stable across platforms, which keeps every
// seeded experiment bit-reproducible.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  // Unbiased draw in [0, n). Lemire's multiply-shift with rejection.
  uint32_t bounded(uint32_t n) {
    uint64_t x = static_cast<uint32_t>(next_u64());
    uint64_t m = x * n;
    auto low = static_cast<uint32_t>(m);
    if (low < n) {
      uint32_t threshold = -n % n;
      while (low < threshold) {
        x = static_cast<uint32_t>(next_u64());
        m = x * n;
        low = static_cast<uint32_t>(m);
      }
    }
    return static_cast<uint32_t>(m >> 32);
  }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  uint64_t state_;
};

// Derives an independent stream seed from a base seed and up to three stream
// coordinates (e.g. run, round, seat). Derivation is pure, so parallel
// workers can pick up work items in any order without changing any stream.
inline uint64_t derive_seed(uint64_t base, uint64_t a, uint64_t b = 0, uint64_t c = 0) {
  uint64_t s = mix64(base + 0x9E3779B97F4A7C15ULL);
  for (uint64_t v : {a, b, c}) {
    s = mix64(s ^ (v + 0x9E3779B97F4A7C15ULL + (s << 6) + (s >> 2)));
  }
  return s;
}

}  // namespace minixcom
