#include "tnsrank/rng.hpp"

#include <limits>

namespace tnsrank {

std::uint64_t CounterRng::uniform(std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  // 2^64 mod bound; draws in the final partial block are redrawn.
  const std::uint64_t excess = (max % bound + 1) % bound;
  while (true) {
    std::uint64_t x = next();
    if (excess == 0 || x <= max - excess) return x % bound;
  }
}

}  // namespace tnsrank
