#pragma once

#include <cstdint>

namespace qpgc {

/// Counter-based 64-bit generator.
///
/// Every draw is a pure function of (seed, stream, counter), so results do not
/// depend on call order, platform, or standard-library version. The mixing
/// function is the SplitMix64 finalizer applied twice over a key built from
/// the three inputs.
///
/// Streams in use:
///   - kEdgeStream:      counter = lexicographic index of the pair (i<j)
///   - kBlockSizeStream: counter = block index
///   - kInitStream + r:  counter = coordinate index of restart r's x0
class CounterRng {
 public:
  static constexpr std::uint64_t kEdgeStream = 1;
  static constexpr std::uint64_t kBlockSizeStream = 2;
  static constexpr std::uint64_t kInitStream = 1024;

  constexpr CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_(mix(seed ^ mix(stream + 0x632BE59BD9B4E019ULL))) {}

  constexpr std::uint64_t bits(std::uint64_t counter) const noexcept {
    return mix(key_ + mix(counter ^ 0xD1B54A32D192ED03ULL));
  }

  /// Uniform on [0, 1) with 53 random bits.
  constexpr double uniform(std::uint64_t counter) const noexcept {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  /// Uniform integer on [lo, hi], inclusive. Uses rejection, so it also
  /// consumes counters (counter, counter + 2^32, ...) on retry.
  std::uint64_t uniform_int(std::uint64_t counter, std::uint64_t lo, std::uint64_t hi) const noexcept;

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t key_;
};

inline std::uint64_t CounterRng::uniform_int(std::uint64_t counter, std::uint64_t lo,
                                             std::uint64_t hi) const noexcept {
  const std::uint64_t span = hi - lo + 1;
  if (span == 0) return bits(counter);  // full 64-bit range
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  for (std::uint64_t attempt = 0;; ++attempt) {
    const std::uint64_t r = bits(counter + (attempt << 32));
    if (r < limit) return lo + r % span;
  }
}

}  // namespace qpgc
