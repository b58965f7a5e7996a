#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tnsrank/cuts.hpp"
#include "tnsrank/edge_function.hpp"
#include "tnsrank/numeric.hpp"
#include "tnsrank/tree.hpp"

namespace tnsrank {

/// Edge-defined tensor network state model: the tensors whose flattening at
/// every edge has rank at most f(edge), with physical dimension dims per leaf.
class TnsModel {
 public:
  /// Throws InputError unless f covers exactly the tree's edges with values
  /// >= 1 and dims has one entry >= 1 per leaf (dims[label - 1]).
  TnsModel(Tree tree, EdgeFunction f, std::vector<std::uint64_t> dims);

  /// f == r on every edge and every leaf of dimension `dim` (r when omitted).
  static TnsModel constant(Tree tree, std::uint64_t r, std::optional<std::uint64_t> dim = std::nullopt);

  const Tree& tree() const { return tree_; }
  const EdgeFunction& f() const { return f_; }
  const std::vector<std::uint64_t>& dims() const { return dims_; }
  std::uint64_t dim(Label label) const { return dims_.at(static_cast<std::size_t>(label - 1)); }

  bool operator==(const TnsModel&) const = default;

 private:
  Tree tree_;
  EdgeFunction f_;
  std::vector<std::uint64_t> dims_;
};

struct RankPrediction {
  BigNat value;
  /// True only for a constant f == r with r <= every leaf dimension; the value
  /// is then the generic flattening rank. Otherwise it is an upper bound.
  bool exact = false;
  Cut witness;
};

/// Minimum over monochromatic cuts of the product of f.
RankPrediction predict_rank(const TnsModel& model, const LeafSet& subset);

/// Shrinks f to a fixed point of
///   f(e) <- min(f(e), min-product cut for the split of e,
///               product of dims on either side of e).
/// Idempotent, pointwise no larger than the input.
TnsModel optimalize(const TnsModel& model);

struct EdgeComparison {
  EdgeId edge;
  std::uint64_t bound = 0;  // g on this edge of the second model
  BigNat required;          // min-product cut of the first model for the split
  Cut cut;                  // cut in the first model's tree attaining `required`
  bool pass = false;
};

/// Outcome of the necessary condition for TNS(first) to lie inside
/// TNS(second). Passing at every edge does not prove inclusion.
struct ComparisonReport {
  std::vector<EdgeComparison> edges;  // one per edge of the second tree
  bool necessary_condition_holds = true;
  std::optional<EdgeId> failing_edge;  // first failing edge, a witness of non-inclusion
};

/// Throws InputError when the leaf counts or dims differ.
ComparisonReport compare_models(const TnsModel& first, const TnsModel& second);

/// Greedy subset with large minimal monochromatic cut: repeatedly take the
/// cherry with the smallest label, put its smaller label in A and drop both
/// leaves. min_mono_cut(tree, A) >= floor(n / 2).
LeafSet construct_hard_subset(const Tree& tree);

}  // namespace tnsrank
