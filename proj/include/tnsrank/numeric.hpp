#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace tnsrank {

/// Arbitrary-precision natural number used for rank bounds and cut products.
using BigNat = boost::multiprecision::cpp_int;

/// r^k without overflow.
inline BigNat big_pow(std::uint64_t base, std::size_t exponent) {
  return boost::multiprecision::pow(BigNat(base), static_cast<unsigned>(exponent));
}

}  // namespace tnsrank
