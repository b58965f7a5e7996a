#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tnsrank {

using Label = int;

/// A set of leaf labels, kept sorted and without repeats.
class LeafSet {
 public:
  LeafSet() = default;
  /// Sorts and deduplicates; throws InputError on labels < 1.
  explicit LeafSet(std::vector<Label> labels);

  /// {1, ..., j}.
  static LeafSet prefix(int j);
  /// Comma-separated labels, e.g. "1,3". The empty string is the empty set.
  static LeafSet parse(std::string_view text);

  const std::vector<Label>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  bool contains(Label label) const;
  /// Largest label, or 0 when empty.
  Label max_label() const { return labels_.empty() ? 0 : labels_.back(); }

  /// {1..n} minus this set.
  LeafSet complement(int n) const;
  LeafSet shifted(int offset) const;
  LeafSet united(const LeafSet& other) const;

  /// "1,3"
  std::string to_string() const;
  /// One flag per label 1..n, indexed by label - 1.
  std::vector<char> indicator(int n) const;

  bool operator==(const LeafSet&) const = default;
  /// Orders by size first, then lexicographically.
  std::strong_ordering operator<=>(const LeafSet& other) const;

 private:
  std::vector<Label> labels_;
};

/// Canonical name of a tree edge: the side of its leaf bipartition that is
/// smaller under (size, sorted labels).
class EdgeId {
 public:
  EdgeId() = default;

  /// Canonicalizes either side of the bipartition of {1..n}.
  static EdgeId from_side(const LeafSet& side, int n);
  /// Dash-joined labels, e.g. "1-2". The result is not canonicalized; look it
  /// up through Tree::find_edge to resolve it against a tree.
  static EdgeId parse(std::string_view key);

  const LeafSet& side() const { return side_; }
  std::string key() const;

  bool operator==(const EdgeId&) const = default;
  std::strong_ordering operator<=>(const EdgeId& other) const { return side_ <=> other.side_; }

 private:
  explicit EdgeId(LeafSet side) : side_(std::move(side)) {}
  LeafSet side_;
};

/// Unrooted leaf-labelled tree. Internal vertices have degree 3, leaves carry
/// the labels 1..n. Vertex v < n is the leaf labelled v + 1.
///
/// Trees are immutable; every builder returns a fresh value.
class Tree {
 public:
  struct Edge {
    int u;
    int v;
  };
  struct Incidence {
    int vertex;
    int edge;
  };
  /// Rooting at the leaf labelled 1, i.e. at the canonical least edge {1}.
  /// Children are ordered by the smallest leaf label below them.
  struct Rooting {
    int root = 0;
    std::vector<int> preorder;
    std::vector<int> parent;       // -1 at the root
    std::vector<int> parent_edge;  // -1 at the root
    std::vector<std::vector<int>> children;
  };

  /// Parses a fully parenthesized binary expression such as "((1,2),(3,4))".
  /// The implied degree-2 root is suppressed.
  static Tree parse(std::string_view text);
  /// Caterpillar with leaves 1 and n at the ends of the spine.
  static Tree train_track(int n);
  /// Perfect binary tree of depth ceil(log2 n) with the rightmost leaves of
  /// the last row removed (a heap-shaped tree), leaves labelled left to right.
  /// n = 6 gives (((1,2),(3,4)),(5,6)).
  static Tree almost_perfect_binary(int n);

  int leaf_count() const { return leaf_count_; }
  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  std::span<const Edge> edges() const { return edges_; }
  std::span<const EdgeId> edge_ids() const { return edge_ids_; }
  const EdgeId& edge_id(std::size_t edge) const { return edge_ids_.at(edge); }
  std::span<const Incidence> incident(int vertex) const { return adjacency_.at(vertex); }
  bool is_leaf(int vertex) const { return vertex < leaf_count_; }
  /// Label of a leaf vertex, 0 for internal vertices.
  Label label(int vertex) const { return is_leaf(vertex) ? vertex + 1 : 0; }
  int leaf_vertex(Label label) const { return label - 1; }
  /// True when one endpoint of the edge is a leaf.
  bool is_pendant(std::size_t edge) const;

  std::optional<std::size_t> find_edge(const EdgeId& id) const;
  /// Like find_edge, but throws InputError for edges not in the tree.
  std::size_t edge_index(const EdgeId& id) const;

  /// The side of the edge's bipartition named by `id`: the canonical side for
  /// a canonical id, the given side otherwise. Throws InputError if `id` is
  /// not a side of any edge.
  LeafSet leaves_left_of(const EdgeId& id) const;
  /// {1..n}
  LeafSet all_leaves() const { return LeafSet::prefix(leaf_count_); }

  /// The leaf carrying label i carries perm[i - 1] afterwards.
  Tree relabel(std::span<const Label> perm) const;

  /// Rooted at edge {1}: "(1,S)", children ordered by smallest leaf label.
  std::string serialize() const;

  const Rooting& rooting() const { return rooting_; }

  /// Same leaf count and same split system, i.e. the same unrooted tree.
  bool operator==(const Tree& other) const;

 private:
  struct Node {
    Label label = 0;  // 0 for internal nodes
    int left = -1;
    int right = -1;
  };
  Tree() = default;
  static Tree from_rooted(const std::vector<Node>& nodes, int root);
  void finalize();
  void build_adjacency();
  void build_rooting();
  std::string serialize_below(int vertex) const;

  int leaf_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<EdgeId> edge_ids_;
  std::vector<std::vector<Incidence>> adjacency_;
  Rooting rooting_;
};

}  // namespace tnsrank
