#pragma once

#include <cstdint>

namespace tnsrank {

/// SplitMix64 output finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

// Stream identifiers keep unrelated consumers of one seed apart.
inline constexpr std::uint64_t kTensorStream = 1;
inline constexpr std::uint64_t kPermutationStream = 2;

/// Counter-based generator. Draw i (counting from 1) is
///   mix64(key + i * kGoldenGamma),  key = mix64(seed ^ mix64(stream * kGoldenGamma)).
/// This scheme is fixed: golden outputs depend on it.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix64(seed ^ mix64(stream * kGoldenGamma))) {}

  std::uint64_t next() { return mix64(key_ + (++counter_) * kGoldenGamma); }

  /// Uniform in [0, bound) by rejection; bound must be >= 1.
  std::uint64_t uniform(std::uint64_t bound);

  std::uint64_t draws() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace tnsrank
