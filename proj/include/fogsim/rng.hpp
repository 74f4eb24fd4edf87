#pragma once

#include <cstdint>

namespace fogsim {

/// Deterministic 64-bit generator (splitmix64). The algorithm is fixed so
/// that seeded scenario generation reproduces bit-for-bit across platforms
/// and compilers; std::mt19937 distributions are not portable enough.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n). Multiply-shift reduction; the mapping is
  /// part of the reproducibility contract.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  /// Decorrelated substream for (seed, tag). Each user draws from its own
  /// substream so adding users never perturbs earlier users' parameters.
  static SplitMix64 substream(std::uint64_t seed, std::uint64_t tag) {
    SplitMix64 mixer(seed ^ (0xD1B54A32D192ED03ULL * (tag + 1)));
    return SplitMix64(mixer.next());
  }

 private:
  std::uint64_t state_;
};

}  // namespace fogsim
