#pragma once

#include <cstdint>
#include <vector>

#include "tnsrank/numeric.hpp"
#include "tnsrank/tree.hpp"

namespace tnsrank {

/// Landmark leaf counts: a_0 = 0 and a_k = 4^0 + 4^1 + ... + 4^k.
/// Throws InputError for k > 30 (the value would not fit in 64 bits).
std::uint64_t landmark(unsigned k);

struct TtExponent {
  std::size_t k = 0;
  /// Smallest j in 1..n-1 with min_mono_cut(tree, {1..j}) == k.
  int witness_j = 0;
};

/// Largest minimal monochromatic cut over the prefix subsets {1..j}: the
/// exponent e with TNS(tree, r) inside the train track model of bond r^e in
/// the tree's leaf order.
TtExponent tt_exponent(const Tree& tree);

enum class PermutationMode { exhaustive, sampled };

struct PermutationScan {
  std::size_t k_min = 0;
  /// perm[i - 1] is the new label of leaf i; first attaining permutation.
  std::vector<Label> witness;
  std::size_t permutations_checked = 0;
};

inline constexpr int kExhaustiveMaxLeaves = 8;
inline constexpr std::size_t kDefaultPermutationTrials = 1000;

/// Minimum of tt_exponent over relabellings of the tree. Exhaustive mode walks
/// all n! permutations in lexicographic order (n <= 8); sampled mode draws
/// `trials` uniform permutations from the seeded generator.
PermutationScan min_exponent_over_permutations(const Tree& tree, PermutationMode mode,
                                               std::size_t trials = kDefaultPermutationTrials,
                                               std::uint64_t seed = 0);

struct Verdict {
  int n = 0;
  std::uint64_t r = 0;
  std::size_t k = 0;
  int witness_j = 0;
  BigNat inclusion_bond;  // r^k
  BigNat exclusion_bond;  // r^k - 1
};

/// Exponent for the almost perfect binary tree on n leaves against the train
/// track on the same leaf order. Throws InternalError if the exponent does not
/// satisfy a_{k-1} < n <= a_k.
Verdict hackbusch_verdict(int n, std::uint64_t r);

}  // namespace tnsrank
