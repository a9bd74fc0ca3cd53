#pragma once

#include <cstdint>
#include <limits>

namespace kinnet {

// Substream purposes.
enum Stream : std::uint64_t { kSample = 1, kNetwork = 2, kPairing = 3, kCollision = 4 };

// Keyed SplitMix64 stream. A stream is addressed by (seed, step, index, purpose)
// so every particle or pair gets its own substream and results do not depend
// on how work is split across threads.
__extension__ typedef unsigned __int128 u128;

class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t step, std::uint64_t index, std::uint64_t purpose)
      : state_(mix(seed ^ mix(step + 0x632be59bd9b4e019ULL) ^ mix(mix(index) + purpose))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix(state_ += 0x9e3779b97f4a7c15ULL); }
  // uniform in [0, 1)
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  // uniform integer in [0, n)
  std::uint64_t below(std::uint64_t n) {
    // Lemire's multiply-shift with rejection
    u128 m = static_cast<u128>((*this)()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t t = (0 - n) % n;
      while (low < t) {
        m = static_cast<u128>((*this)()) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t state_;
};

}  // namespace kinnet
