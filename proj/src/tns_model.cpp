#include "tnsrank/tns_model.hpp"

#include <algorithm>
#include <set>

#include "tnsrank/errors.hpp"

namespace tnsrank {

TnsModel::TnsModel(Tree tree, EdgeFunction f, std::vector<std::uint64_t> dims)
    : tree_(std::move(tree)), f_(std::move(f)), dims_(std::move(dims)) {
  f_.on_edges(tree_);
  if (dims_.size() != static_cast<std::size_t>(tree_.leaf_count())) {
    throw InputError("model has " + std::to_string(dims_.size()) + " leaf dimensions for " +
                     std::to_string(tree_.leaf_count()) + " leaves");
  }
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (dims_[i] == 0) throw InputError("dimension of leaf " + std::to_string(i + 1) + " must be >= 1");
  }
}

TnsModel TnsModel::constant(Tree tree, std::uint64_t r, std::optional<std::uint64_t> dim) {
  auto f = EdgeFunction::constant(tree, r);
  std::vector<std::uint64_t> dims(static_cast<std::size_t>(tree.leaf_count()), dim.value_or(r));
  return TnsModel(std::move(tree), std::move(f), std::move(dims));
}

RankPrediction predict_rank(const TnsModel& model, const LeafSet& subset) {
  auto cut = min_product_cut(model.tree(), subset, model.f());
  RankPrediction out;
  out.value = std::move(cut.product);
  out.witness = std::move(cut.witness);
  const auto n = model.tree().leaf_count();
  if (subset.empty() || static_cast<int>(subset.size()) == n) {
    // A generic tensor is nonzero, so a trivial flattening has rank exactly 1.
    out.exact = true;
  } else if (auto r = model.f().constant_value()) {
    const auto& dims = model.dims();
    out.exact = std::all_of(dims.begin(), dims.end(), [&](std::uint64_t d) { return *r <= d; });
  }
  return out;
}

namespace {

BigNat dims_product(const TnsModel& model, const LeafSet& side) {
  BigNat p = 1;
  for (Label l : side.labels()) p *= model.dim(l);
  return p;
}

}  // namespace

TnsModel optimalize(const TnsModel& model) {
  const auto& tree = model.tree();
  const auto n = tree.leaf_count();
  auto values = model.f().on_edges(tree);

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t e = 0; e < tree.edge_count(); ++e) {
      EdgeFunction current;
      for (std::size_t i = 0; i < tree.edge_count(); ++i) current.set(tree, tree.edge_id(i), values[i]);
      const auto& side = tree.edge_id(e).side();
      BigNat cap = values[e];
      cap = std::min(cap, min_product_cut(tree, side, current).product);
      cap = std::min(cap, dims_product(model, side));
      cap = std::min(cap, dims_product(model, side.complement(n)));
      auto reduced = cap.convert_to<std::uint64_t>();
      if (reduced < values[e]) {
        values[e] = reduced;
        changed = true;
      }
    }
  }

  EdgeFunction f;
  for (std::size_t i = 0; i < tree.edge_count(); ++i) f.set(tree, tree.edge_id(i), values[i]);
  return TnsModel(tree, std::move(f), model.dims());
}

ComparisonReport compare_models(const TnsModel& first, const TnsModel& second) {
  if (first.tree().leaf_count() != second.tree().leaf_count()) {
    throw InputError("models have different leaf counts (" + std::to_string(first.tree().leaf_count()) + " vs " +
                     std::to_string(second.tree().leaf_count()) + ")");
  }
  if (first.dims() != second.dims()) throw InputError("models have different leaf dimensions");

  ComparisonReport report;
  const auto& tree2 = second.tree();
  for (std::size_t e = 0; e < tree2.edge_count(); ++e) {
    const auto& id = tree2.edge_id(e);
    auto cut = min_product_cut(first.tree(), id.side(), first.f());
    EdgeComparison row;
    row.edge = id;
    row.bound = second.f().at(id);
    row.required = std::move(cut.product);
    row.cut = std::move(cut.witness);
    row.pass = BigNat(row.bound) >= row.required;
    if (!row.pass && report.necessary_condition_holds) {
      report.necessary_condition_holds = false;
      report.failing_edge = id;
    }
    report.edges.push_back(std::move(row));
  }
  return report;
}

LeafSet construct_hard_subset(const Tree& tree) {
  const int n = tree.leaf_count();
  const auto vcount = tree.vertex_count();
  std::vector<std::set<int>> adj(vcount);
  for (const auto& e : tree.edges()) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  std::set<int> leaves;
  for (int v = 0; v < n; ++v) leaves.insert(v);

  auto remove_vertex = [&](int v) {
    for (int w : adj[v]) adj[w].erase(v);
    adj[v].clear();
  };
  // Degree-2 internal vertices are spliced out so the tree stays binary.
  auto suppress = [&](int v) {
    if (tree.is_leaf(v) || adj[v].size() != 2) return;
    int a = *adj[v].begin();
    int b = *adj[v].rbegin();
    remove_vertex(v);
    adj[a].insert(b);
    adj[b].insert(a);
  };

  std::vector<Label> chosen;
  while (leaves.size() >= 2) {
    int first = -1;
    int second = -1;
    if (leaves.size() <= 3) {
      first = *leaves.begin();
      second = *std::next(leaves.begin());
    } else {
      // Cherry whose smaller leaf label is least.
      for (int leaf : leaves) {
        int hub = *adj[leaf].begin();
        int partner = -1;
        for (int w : adj[hub]) {
          if (w != leaf && tree.is_leaf(w)) partner = w;
        }
        if (partner >= 0) {
          first = std::min(leaf, partner);
          second = std::max(leaf, partner);
          break;
        }
      }
      if (first < 0) throw InternalError("no cherry found in a tree with more than 3 leaves");
    }
    chosen.push_back(tree.label(first));
    if (leaves.size() > 3) {
      int hub = *adj[first].begin();
      remove_vertex(first);
      remove_vertex(second);
      int rest = *adj[hub].begin();
      remove_vertex(hub);
      suppress(rest);
    }
    leaves.erase(first);
    leaves.erase(second);
    if (leaves.size() < 2) break;
  }
  return LeafSet(std::move(chosen));
}

}  // namespace tnsrank
