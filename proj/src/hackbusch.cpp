#include "tnsrank/hackbusch.hpp"

#include <algorithm>
#include <numeric>

#include "tnsrank/cuts.hpp"
#include "tnsrank/errors.hpp"
#include "tnsrank/rng.hpp"

namespace tnsrank {

std::uint64_t landmark(unsigned k) {
  if (k == 0) return 0;
  if (k > 30) throw InputError("landmark a_k overflows 64 bits for k > 30");
  std::uint64_t sum = 0;
  std::uint64_t power = 1;
  for (unsigned i = 0; i <= k; ++i) {
    sum += power;
    power *= 4;
  }
  return sum;
}

TtExponent tt_exponent(const Tree& tree) {
  TtExponent best;
  for (int j = 1; j < tree.leaf_count(); ++j) {
    auto size = *min_mono_cut(tree, LeafSet::prefix(j)).size;
    if (size > best.k) {
      best.k = size;
      best.witness_j = j;
    }
  }
  return best;
}

PermutationScan min_exponent_over_permutations(const Tree& tree, PermutationMode mode, std::size_t trials,
                                               std::uint64_t seed) {
  const int n = tree.leaf_count();
  std::vector<Label> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  PermutationScan scan;
  bool have = false;
  auto consider = [&] {
    auto k = tt_exponent(tree.relabel(perm)).k;
    ++scan.permutations_checked;
    if (!have || k < scan.k_min) {
      scan.k_min = k;
      scan.witness = perm;
      have = true;
    }
  };

  if (mode == PermutationMode::exhaustive) {
    if (n > kExhaustiveMaxLeaves) {
      throw ResourceError("exhaustive permutation scan is limited to " + std::to_string(kExhaustiveMaxLeaves) +
                       " leaves, tree has " + std::to_string(n));
    }
    do {
      consider();
    } while (std::next_permutation(perm.begin(), perm.end()));
    return scan;
  }

  if (trials == 0) throw InputError("sampled permutation scan needs at least one trial");
  CounterRng rng(seed, kPermutationStream);
  for (std::size_t t = 0; t < trials; ++t) {
    std::iota(perm.begin(), perm.end(), 1);
    for (std::size_t i = perm.size(); i > 1; --i) {
      auto j = static_cast<std::size_t>(rng.uniform(i));
      std::swap(perm[i - 1], perm[j]);
    }
    consider();
  }
  return scan;
}

Verdict hackbusch_verdict(int n, std::uint64_t r) {
  if (n < 2) throw InputError("hackbusch verdict needs n >= 2, got " + std::to_string(n));
  if (r < 2) throw InputError("hackbusch verdict needs r >= 2, got " + std::to_string(r));
  auto exponent = tt_exponent(Tree::almost_perfect_binary(n));
  const auto k = static_cast<unsigned>(exponent.k);
  const auto un = static_cast<std::uint64_t>(n);
  if (k == 0 || !(landmark(k - 1) < un && un <= landmark(k))) {
    throw InternalError("exponent " + std::to_string(k) + " of the almost perfect binary tree on " +
                        std::to_string(n) + " leaves is outside its landmark interval");
  }
  Verdict v;
  v.n = n;
  v.r = r;
  v.k = exponent.k;
  v.witness_j = exponent.witness_j;
  v.inclusion_bond = big_pow(r, exponent.k);
  v.exclusion_bond = v.inclusion_bond - 1;
  return v;
}

}  // namespace tnsrank
