#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tnsrank/edge_function.hpp"
#include "tnsrank/numeric.hpp"
#include "tnsrank/tree.hpp"

namespace tnsrank {

/// A set of tree edges, sorted ascending by EdgeId.
using Cut = std::vector<EdgeId>;

struct CutResult {
  /// nullopt is the "none" sentinel: a colour cut does not exist when A or
  /// its complement is empty.
  std::optional<std::size_t> size;
  Cut witness;
};

struct ProductCut {
  BigNat product;
  Cut witness;
};

/// Smallest edge set whose removal leaves every component with leaves all in
/// A or all outside A. Leafless components are unconstrained.
///
/// Two-state dynamic program rooted at leaf 1; linear in the tree size. On
/// equal cost a pendant edge is cut in preference to deferring, and an
/// internal edge is kept so that cuts land closer to the leaves.
CutResult min_mono_cut(const Tree& tree, const LeafSet& subset);

/// Largest edge set whose removal leaves every component with at least one
/// leaf in A and one outside. Size is nullopt when A or its complement is empty.
CutResult max_colour_cut(const Tree& tree, const LeafSet& subset);

/// Monochromatic cut minimizing the product of f over its edges.
ProductCut min_product_cut(const Tree& tree, const LeafSet& subset, const EdgeFunction& f);

bool verify_mono_cut(const Tree& tree, const LeafSet& subset, const Cut& cut);
bool verify_colour_cut(const Tree& tree, const LeafSet& subset, const Cut& cut);

/// Exhaustive search by increasing cut size. Independent of the dynamic program.
std::size_t brute_force_min_mono(const Tree& tree, const LeafSet& subset);

/// Largest tree accepted by brute_force_min_mono.
inline constexpr std::size_t kBruteForceMaxEdges = 24;

}  // namespace tnsrank
