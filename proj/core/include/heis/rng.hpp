#pragma once

#include <cstdint>

namespace heis {

/// SplitMix64. The state advances by 0x9E3779B97F4A7C15 per draw and each output
/// is the standard three-round mix of the new state; seed 0 yields
/// 0xE220A8397B1DCDAF first. Doubles take the top 53 bits.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed = 0) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1).
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Independent child stream for sub-task `index`.
  SplitMix64 fork(std::uint64_t index) noexcept {
    SplitMix64 mixer(state_ ^ (0xD1B54A32D192ED03ULL * (index + 1)));
    return SplitMix64(mixer.next());
  }

 private:
  std::uint64_t state_;
};

}  // namespace heis
