#pragma once

#include <cstdint>

namespace tnsrank {

__extension__ typedef unsigned __int128 WideUint;

inline constexpr std::uint64_t kDefaultPrime = 2147483647ULL;  // 2^31 - 1
inline constexpr std::uint64_t kMinPrime = 1000000ULL;

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t value);

/// Arithmetic modulo a word-sized prime p, 10^6 < p < 2^63. Products use
/// 128-bit intermediates.
class PrimeField {
 public:
  /// Throws InputError unless p is a prime in range.
  explicit PrimeField(std::uint64_t p = kDefaultPrime);

  std::uint64_t prime() const { return p_; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<WideUint>(a) * b % p_);
  }
  std::uint64_t pow(std::uint64_t base, std::uint64_t exponent) const;
  /// Multiplicative inverse of a nonzero element.
  std::uint64_t inv(std::uint64_t a) const { return pow(a, p_ - 2); }

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint64_t p_;
};

}  // namespace tnsrank
