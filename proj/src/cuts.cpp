#include "tnsrank/cuts.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>

#include "tnsrank/errors.hpp"

namespace tnsrank {

namespace {

// Colour per label: 1 in A, 0 outside.
std::vector<char> colouring(const Tree& tree, const LeafSet& subset) {
  return subset.indicator(tree.leaf_count());
}

Cut to_cut(const Tree& tree, std::vector<int> edges) {
  std::sort(edges.begin(), edges.end());
  Cut cut;
  cut.reserve(edges.size());
  for (int e : edges) cut.push_back(tree.edge_id(e));
  return cut;
}

// Monochromatic-cut DP over a cost monoid. `cut_cost(edge, c)` extends a
// subtree cost c by cutting `edge`, `join(a, b)` merges sibling costs.
template <class Cost>
struct MonoSolution {
  Cost cost;
  std::vector<int> cut_edges;
};

template <class Cost, class Join, class CutCost>
MonoSolution<Cost> solve_mono(const Tree& tree, const std::vector<char>& colour, const Cost& identity,
                              Join join, CutCost cut_cost) {
  const auto& rooting = tree.rooting();
  const auto vcount = tree.vertex_count();
  using Slot = std::optional<Cost>;
  // best[v][c]: cheapest cut inside the subtree of v given v's component has colour c.
  std::vector<std::array<Slot, 2>> best(vcount);
  // cut_child[u][c]: whether u's parent edge is cut when the parent has colour c.
  std::vector<std::array<char, 2>> cut_child(vcount, {0, 0});

  auto child_option = [&](int u, int c) -> Slot {
    const Slot& keep = best[u][c];
    Slot cut;
    if (best[u][1 - c]) cut = cut_cost(rooting.parent_edge[u], *best[u][1 - c]);
    if (!keep && !cut) return std::nullopt;
    bool take_cut;
    if (!keep) {
      take_cut = true;
    } else if (!cut) {
      take_cut = false;
    } else if (*cut < *keep) {
      take_cut = true;
    } else if (*keep < *cut) {
      take_cut = false;
    } else {
      take_cut = tree.is_pendant(static_cast<std::size_t>(rooting.parent_edge[u]));
    }
    cut_child[u][c] = take_cut ? 1 : 0;
    return take_cut ? cut : keep;
  };

  for (auto it = rooting.preorder.rbegin(); it != rooting.preorder.rend(); ++it) {
    int v = *it;
    if (v == rooting.root) continue;
    if (tree.is_leaf(v)) {
      int c = colour[tree.label(v) - 1];
      best[v][c] = identity;
      best[v][1 - c] = std::nullopt;
      continue;
    }
    for (int c = 0; c < 2; ++c) {
      Slot acc = identity;
      for (int u : rooting.children[v]) {
        Slot option = child_option(u, c);
        if (!option) {
          acc = std::nullopt;
          // Still evaluate the remaining children so cut_child is populated.
          continue;
        }
        if (acc) acc = join(*acc, *option);
      }
      best[v][c] = acc;
    }
  }

  const int root = rooting.root;
  const int root_colour = colour[tree.label(root) - 1];
  const int child = rooting.children[root].front();
  Slot total = child_option(child, root_colour);
  if (!total) throw InternalError("monochromatic cut DP found no feasible state");

  MonoSolution<Cost> solution{*total, {}};
  // Walk down, replaying the recorded decisions.
  std::vector<std::pair<int, int>> stack{{child, root_colour}};
  while (!stack.empty()) {
    auto [u, parent_colour] = stack.back();
    stack.pop_back();
    int c = parent_colour;
    if (cut_child[u][parent_colour]) {
      solution.cut_edges.push_back(rooting.parent_edge[u]);
      c = 1 - parent_colour;
    }
    for (int w : rooting.children[u]) stack.emplace_back(w, c);
  }
  return solution;
}

void check_labels(const Tree& tree, const LeafSet& subset) {
  if (subset.max_label() > tree.leaf_count()) {
    throw InputError("subset label " + std::to_string(subset.max_label()) + " is not a leaf of the tree (1.." +
                     std::to_string(tree.leaf_count()) + ")");
  }
}

std::vector<char> cut_mask(const Tree& tree, const Cut& cut) {
  std::vector<char> mask(tree.edge_count(), 0);
  for (const auto& id : cut) {
    auto e = tree.edge_index(id);
    if (mask[e]) throw InputError("edge " + id.key() + " appears twice in the cut");
    mask[e] = 1;
  }
  return mask;
}

// Bit 1: component has a leaf in A, bit 2: a leaf outside A.
std::vector<int> component_colours(const Tree& tree, const std::vector<char>& colour,
                                   const std::vector<char>& removed) {
  const auto vcount = tree.vertex_count();
  std::vector<int> parent(vcount);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  auto edges = tree.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!removed[e]) parent[find(edges[e].u)] = find(edges[e].v);
  }
  std::vector<int> mask(vcount, -1);
  for (std::size_t v = 0; v < vcount; ++v) {
    int r = find(static_cast<int>(v));
    if (mask[r] < 0) mask[r] = 0;
    if (tree.is_leaf(static_cast<int>(v))) mask[r] |= colour[v] ? 1 : 2;
  }
  std::vector<int> out;
  for (int m : mask) {
    if (m >= 0) out.push_back(m);
  }
  return out;
}

}  // namespace

CutResult min_mono_cut(const Tree& tree, const LeafSet& subset) {
  check_labels(tree, subset);
  auto colour = colouring(tree, subset);
  auto sol = solve_mono<std::size_t>(
      tree, colour, 0, [](std::size_t a, std::size_t b) { return a + b; },
      [](int, std::size_t c) { return c + 1; });
  return {sol.cost, to_cut(tree, std::move(sol.cut_edges))};
}

ProductCut min_product_cut(const Tree& tree, const LeafSet& subset, const EdgeFunction& f) {
  check_labels(tree, subset);
  auto weights = f.on_edges(tree);
  auto colour = colouring(tree, subset);
  auto sol = solve_mono<BigNat>(
      tree, colour, BigNat(1), [](const BigNat& a, const BigNat& b) { return BigNat(a * b); },
      [&](int e, const BigNat& c) { return BigNat(c * weights[e]); });
  return {std::move(sol.cost), to_cut(tree, std::move(sol.cut_edges))};
}

CutResult max_colour_cut(const Tree& tree, const LeafSet& subset) {
  check_labels(tree, subset);
  if (subset.empty() || static_cast<int>(subset.size()) == tree.leaf_count()) return {std::nullopt, {}};
  auto colour = colouring(tree, subset);
  const auto& rooting = tree.rooting();
  const auto vcount = tree.vertex_count();
  constexpr int kNone = std::numeric_limits<int>::min();
  constexpr int kBoth = 3;

  // best[v][m]: most cuts inside the subtree of v when the component still
  // open at v has colour mask m. Every closed component has mask 3.
  std::vector<std::array<int, 4>> best(vcount);
  // For each internal v and each of its children, the per-mask back pointers
  // of the child fold: (mask before this child, child mask or -1 for cut).
  std::vector<std::vector<std::array<std::pair<int, int>, 4>>> trace(vcount);

  auto leaf_bit = [&](int v) { return colour[tree.label(v) - 1] ? 1 : 2; };

  for (auto it = rooting.preorder.rbegin(); it != rooting.preorder.rend(); ++it) {
    int v = *it;
    if (v == rooting.root) continue;
    if (tree.is_leaf(v)) {
      best[v].fill(kNone);
      best[v][leaf_bit(v)] = 0;
      continue;
    }
    std::array<int, 4> acc;
    acc.fill(kNone);
    acc[0] = 0;
    for (int u : rooting.children[v]) {
      std::array<int, 4> next;
      next.fill(kNone);
      std::array<std::pair<int, int>, 4> back{};
      for (int m = 0; m < 4; ++m) {
        if (acc[m] == kNone) continue;
        for (int mu = 0; mu < 4; ++mu) {
          if (best[u][mu] == kNone) continue;
          int value = acc[m] + best[u][mu];
          int target = m | mu;
          if (value > next[target]) {
            next[target] = value;
            back[target] = {m, mu};
          }
        }
        if (best[u][kBoth] != kNone) {
          int value = acc[m] + best[u][kBoth] + 1;
          if (value > next[m]) {
            next[m] = value;
            back[m] = {m, -1};
          }
        }
      }
      trace[v].push_back(back);
      acc = next;
    }
    best[v] = acc;
  }

  const int root = rooting.root;
  const int child = rooting.children[root].front();
  const int root_bit = leaf_bit(root);
  int best_value = kNone;
  int best_mask = -1;
  for (int mu = 0; mu < 4; ++mu) {
    if (best[child][mu] == kNone || (root_bit | mu) != kBoth) continue;
    if (best[child][mu] > best_value) {
      best_value = best[child][mu];
      best_mask = mu;
    }
  }
  if (best_mask < 0) throw InternalError("colour cut DP found no feasible state");

  std::vector<int> cut_edges;
  std::vector<std::pair<int, int>> stack{{child, best_mask}};
  while (!stack.empty()) {
    auto [v, mask] = stack.back();
    stack.pop_back();
    if (tree.is_leaf(v)) continue;
    const auto& kids = rooting.children[v];
    for (std::size_t i = kids.size(); i-- > 0;) {
      auto [before, child_mask] = trace[v][i][mask];
      if (child_mask < 0) {
        cut_edges.push_back(rooting.parent_edge[kids[i]]);
        stack.emplace_back(kids[i], kBoth);
      } else {
        stack.emplace_back(kids[i], child_mask);
      }
      mask = before;
    }
  }
  return {static_cast<std::size_t>(best_value), to_cut(tree, std::move(cut_edges))};
}

bool verify_mono_cut(const Tree& tree, const LeafSet& subset, const Cut& cut) {
  check_labels(tree, subset);
  auto masks = component_colours(tree, colouring(tree, subset), cut_mask(tree, cut));
  return std::none_of(masks.begin(), masks.end(), [](int m) { return m == 3; });
}

bool verify_colour_cut(const Tree& tree, const LeafSet& subset, const Cut& cut) {
  check_labels(tree, subset);
  auto masks = component_colours(tree, colouring(tree, subset), cut_mask(tree, cut));
  return std::all_of(masks.begin(), masks.end(), [](int m) { return m == 3; });
}

std::size_t brute_force_min_mono(const Tree& tree, const LeafSet& subset) {
  check_labels(tree, subset);
  const auto m = tree.edge_count();
  if (m > kBruteForceMaxEdges) {
    throw ResourceError("brute-force cut search is limited to " + std::to_string(kBruteForceMaxEdges) +
                        " edges, tree has " + std::to_string(m));
  }
  auto colour = colouring(tree, subset);
  const auto& rooting = tree.rooting();
  const auto vcount = tree.vertex_count();
  // Children-before-parents order, with each vertex's parent edge bit.
  std::vector<int> order(rooting.preorder.rbegin(), rooting.preorder.rend());
  std::vector<int> init(vcount, 0);
  for (std::size_t v = 0; v < vcount; ++v) {
    if (tree.is_leaf(static_cast<int>(v))) init[v] = colour[v] ? 1 : 2;
  }
  std::vector<int> comp(vcount);
  auto monochromatic = [&](std::uint32_t removed) {
    comp = init;
    for (int v : order) {
      if (v == rooting.root) return comp[v] != 3;
      if (removed >> rooting.parent_edge[v] & 1u) {
        if (comp[v] == 3) return false;
      } else {
        comp[rooting.parent[v]] |= comp[v];
      }
    }
    return true;
  };

  for (std::size_t k = 0; k <= m; ++k) {
    if (k == 0) {
      if (monochromatic(0)) return 0;
      continue;
    }
    // Gosper's hack over all k-subsets of m bits.
    std::uint32_t s = (1u << k) - 1;
    const std::uint32_t limit = 1u << m;
    while (s < limit) {
      if (monochromatic(s)) return k;
      std::uint32_t c = s & (~s + 1);
      std::uint32_t r = s + c;
      s = (((r ^ s) >> 2) / c) | r;
    }
  }
  throw InternalError("no monochromatic cut found by enumeration");
}

}  // namespace tnsrank
