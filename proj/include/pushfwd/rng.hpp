#pragma once

#include <cstdint>

namespace pushfwd::rng {

// Bijective 64-bit mixer (the splitmix64 finalizer).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// Counter-based generator: draw i of a keyed stream is a pure function of
// (seed, stream, i).  Any partition of the counter range over threads
// reproduces the serial sequence exactly, which is what makes the Monte
// Carlo oracle's output independent of the thread count.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix64(seed + kGolden * (stream + 1))) {}

  std::uint64_t raw(std::uint64_t counter) const {
    return mix64(key_ ^ mix64(counter + kGolden));
  }

  // Uniform in [0,1) from the top 53 bits.
  double uniform(std::uint64_t counter) const {
    return static_cast<double>(raw(counter) >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t key_;
};

}  // namespace pushfwd::rng
