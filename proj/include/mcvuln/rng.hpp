#pragma once

#include <bit>
#include <cstdint>

namespace mcvuln {

/// Counter-based splittable random stream. Each draw hashes an incrementing
/// counter under the stream key, and child streams re-key deterministically
/// from (tag, index). A value identified by its derivation path from the
/// master seed is therefore identical no matter which worker computes it.
class RandomStream {
 public:
  explicit RandomStream(uint64_t seed) : key_(mix(seed ^ kSeedSalt)) {}

  RandomStream child(uint64_t tag, uint64_t index) const {
    uint64_t k = mix(key_ ^ (kChildSalt + tag * kTagMult));
    k = mix(k ^ (kIndexSalt + index * kIndexMult));
    return RandomStream(k, RawKey{});
  }

  uint64_t next_u64() { return mix(key_ + (++counter_) * kGamma); }

  /// Uniform in [0, 1), 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return next_unit() < p;
  }

  /// Pr[k] = 2^-(k+1) for k >= 0: fair-coin failures before the first
  /// success, consuming one bit per flip.
  long geometric_half() {
    long k = 0;
    for (;;) {
      uint64_t bits = next_u64();
      int ones = std::countr_one(bits);
      k += ones;
      if (ones < 64) return k;
    }
  }

 private:
  struct RawKey {};
  RandomStream(uint64_t key, RawKey) : key_(key) {}

  // splitmix64 finalizer
  static uint64_t mix(uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  static constexpr uint64_t kGamma = 0x9e3779b97f4a7c15ull;
  static constexpr uint64_t kSeedSalt = 0x5bf03635f0981fadull;
  static constexpr uint64_t kChildSalt = 0x94f1d58a3c0e23bfull;
  static constexpr uint64_t kTagMult = 0xd1342543de82ef95ull;
  static constexpr uint64_t kIndexMult = 0xaef17502108ef2d9ull;
  static constexpr uint64_t kIndexSalt = 0x2545f4914f6cdd1dull;

  uint64_t key_;
  uint64_t counter_ = 0;
};

// Stable derivation tags; changing these changes every seeded result, so they
// are part of the reproducibility contract.
namespace stream_tag {
inline constexpr uint64_t kEstimator = 1;
inline constexpr uint64_t kSample = 2;
inline constexpr uint64_t kProgram = 3;
inline constexpr uint64_t kThread = 4;
inline constexpr uint64_t kShift = 5;
inline constexpr uint64_t kRound = 6;
}  // namespace stream_tag

}  // namespace mcvuln
