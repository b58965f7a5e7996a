#include "tnsrank/tree.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "tnsrank/errors.hpp"

namespace tnsrank {

// ---------------------------------------------------------------------------
// LeafSet

LeafSet::LeafSet(std::vector<Label> labels) : labels_(std::move(labels)) {
  std::sort(labels_.begin(), labels_.end());
  labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());
  if (!labels_.empty() && labels_.front() < 1) {
    throw InputError("leaf labels must be positive, got " + std::to_string(labels_.front()));
  }
}

LeafSet LeafSet::prefix(int j) {
  std::vector<Label> labels(static_cast<std::size_t>(std::max(j, 0)));
  std::iota(labels.begin(), labels.end(), 1);
  return LeafSet(std::move(labels));
}

namespace {

int parse_label(std::string_view token, std::string_view context) {
  while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
  while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
  int value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc() || ptr != end) {
    throw InputError("invalid label '" + std::string(token) + "' in " + std::string(context));
  }
  return value;
}

std::vector<int> split_labels(std::string_view text, char sep) {
  std::vector<int> out;
  if (text.find_first_not_of(' ') == std::string_view::npos) return out;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    out.push_back(parse_label(text.substr(start, pos - start), text));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string join(const std::vector<Label>& labels, char sep) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(labels[i]);
  }
  return out;
}

}  // namespace

LeafSet LeafSet::parse(std::string_view text) { return LeafSet(split_labels(text, ',')); }

bool LeafSet::contains(Label label) const {
  return std::binary_search(labels_.begin(), labels_.end(), label);
}

LeafSet LeafSet::complement(int n) const {
  std::vector<Label> out;
  for (Label l = 1; l <= n; ++l) {
    if (!contains(l)) out.push_back(l);
  }
  return LeafSet(std::move(out));
}

LeafSet LeafSet::shifted(int offset) const {
  auto out = labels_;
  for (auto& l : out) l += offset;
  return LeafSet(std::move(out));
}

LeafSet LeafSet::united(const LeafSet& other) const {
  auto out = labels_;
  out.insert(out.end(), other.labels_.begin(), other.labels_.end());
  return LeafSet(std::move(out));
}

std::string LeafSet::to_string() const { return join(labels_, ','); }

std::vector<char> LeafSet::indicator(int n) const {
  std::vector<char> flags(static_cast<std::size_t>(n), 0);
  for (Label l : labels_) {
    if (l > n) throw InputError("leaf label " + std::to_string(l) + " is not in 1.." + std::to_string(n));
    flags[l - 1] = 1;
  }
  return flags;
}

std::strong_ordering LeafSet::operator<=>(const LeafSet& other) const {
  if (auto c = labels_.size() <=> other.labels_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(labels_.begin(), labels_.end(), other.labels_.begin(),
                                                other.labels_.end());
}

// ---------------------------------------------------------------------------
// EdgeId

EdgeId EdgeId::from_side(const LeafSet& side, int n) {
  if (side.empty() || static_cast<int>(side.size()) >= n || side.max_label() > n) {
    throw InputError("'" + side.to_string() + "' is not a nonempty proper subset of 1.." + std::to_string(n));
  }
  auto other = side.complement(n);
  return EdgeId(std::min(side, other));
}

EdgeId EdgeId::parse(std::string_view key) {
  auto labels = split_labels(key, '-');
  if (labels.empty()) throw InputError("empty edge key");
  return EdgeId(LeafSet(std::move(labels)));
}

std::string EdgeId::key() const { return join(side_.labels(), '-'); }

// ---------------------------------------------------------------------------
// Tree construction

namespace {

class TreeTextParser {
 public:
  struct Node {
    Label label = 0;
    int left = -1;
    int right = -1;
  };

  explicit TreeTextParser(std::string_view text) : text_(text) {}

  std::vector<Node> nodes;

  int parse_all() {
    int root = parse_node();
    skip_space();
    if (pos_ != text_.size()) {
      if (text_[pos_] == ')') throw InputError("unbalanced parentheses: unexpected ')'");
      throw InputError("trailing characters after tree expression");
    }
    return root;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                                   text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  int parse_node() {
    skip_space();
    if (pos_ >= text_.size()) throw InputError("unbalanced parentheses: unexpected end of tree text");
    if (text_[pos_] == '(') {
      ++pos_;
      int left = parse_node();
      expect(',');
      int right = parse_node();
      skip_space();
      if (pos_ >= text_.size()) throw InputError("unbalanced parentheses: missing ')'");
      if (text_[pos_] == ',') throw InputError("internal nodes must have exactly two children");
      expect(')');
      nodes.push_back({0, left, right});
      return static_cast<int>(nodes.size()) - 1;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
    if (start == pos_) {
      throw InputError(std::string("unexpected character '") + text_[pos_] + "' in tree text");
    }
    int label = parse_label(text_.substr(start, pos_ - start), "tree text");
    if (label < 1) throw InputError("leaf labels must be positive");
    nodes.push_back({label, -1, -1});
    return static_cast<int>(nodes.size()) - 1;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size()) throw InputError("unbalanced parentheses: unexpected end of tree text");
    if (text_[pos_] != c) {
      throw InputError(std::string("expected '") + c + "' but found '" + text_[pos_] + "'");
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Tree Tree::parse(std::string_view text) {
  TreeTextParser parser(text);
  int root = parser.parse_all();
  std::vector<Node> nodes;
  nodes.reserve(parser.nodes.size());
  for (const auto& n : parser.nodes) nodes.push_back({n.label, n.left, n.right});
  return from_rooted(nodes, root);
}

Tree Tree::from_rooted(const std::vector<Node>& nodes, int root) {
  std::vector<Label> labels;
  for (const auto& node : nodes) {
    if (node.label != 0) labels.push_back(node.label);
  }
  const int n = static_cast<int>(labels.size());
  if (n < 2) throw InputError("a tree needs at least 2 leaves");
  std::sort(labels.begin(), labels.end());
  for (int i = 0; i < n; ++i) {
    if (i > 0 && labels[i] == labels[i - 1]) {
      throw InputError("repeated leaf label " + std::to_string(labels[i]));
    }
    if (labels[i] != i + 1) throw InputError("leaf labels must be exactly 1.." + std::to_string(n));
  }

  Tree tree;
  tree.leaf_count_ = n;
  int next_internal = n;
  // Returns the vertex for a node, creating edges below it.
  auto attach = [&](auto&& self, int node) -> int {
    const auto& nd = nodes[node];
    if (nd.label != 0) return nd.label - 1;
    int v = next_internal++;
    int a = self(self, nd.left);
    int b = self(self, nd.right);
    tree.edges_.push_back({v, a});
    tree.edges_.push_back({v, b});
    return v;
  };
  // The root has degree 2 and is suppressed.
  int a = attach(attach, nodes[root].left);
  int b = attach(attach, nodes[root].right);
  tree.edges_.push_back({a, b});
  tree.adjacency_.resize(static_cast<std::size_t>(next_internal));
  tree.finalize();
  return tree;
}

Tree Tree::train_track(int n) {
  if (n < 2) throw InputError("train track needs n >= 2, got " + std::to_string(n));
  std::vector<Node> nodes;
  nodes.push_back({1, -1, -1});
  int current = 0;
  for (Label l = 2; l <= n; ++l) {
    nodes.push_back({l, -1, -1});
    nodes.push_back({0, current, static_cast<int>(nodes.size()) - 1});
    current = static_cast<int>(nodes.size()) - 1;
  }
  return from_rooted(nodes, current);
}

Tree Tree::almost_perfect_binary(int n) {
  if (n < 2) throw InputError("almost perfect binary tree needs n >= 2, got " + std::to_string(n));
  int depth = 0;
  while ((1 << depth) < n) ++depth;
  // The deepest row holds 2 * (n - 2^(depth-1)) leaves, packed to the left;
  // every other leaf sits one row up.
  const int deepest = 2 * (n - (1 << (depth - 1)));
  std::vector<Node> nodes;
  Label next = 1;
  auto build = [&](auto&& self, int level, int position) -> int {
    if (level == depth || (level == depth - 1 && 2 * position >= deepest)) {
      nodes.push_back({next++, -1, -1});
    } else {
      int left = self(self, level + 1, 2 * position);
      int right = self(self, level + 1, 2 * position + 1);
      nodes.push_back({0, left, right});
    }
    return static_cast<int>(nodes.size()) - 1;
  };
  int root = build(build, 0, 0);
  return from_rooted(nodes, root);
}

void Tree::build_adjacency() {
  for (auto& list : adjacency_) list.clear();
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    adjacency_[edges_[e].u].push_back({edges_[e].v, static_cast<int>(e)});
    adjacency_[edges_[e].v].push_back({edges_[e].u, static_cast<int>(e)});
  }
}

void Tree::build_rooting() {
  const auto vcount = adjacency_.size();
  Rooting r;
  r.root = 0;
  r.parent.assign(vcount, -1);
  r.parent_edge.assign(vcount, -1);
  r.children.assign(vcount, {});
  std::vector<int> order;
  order.reserve(vcount);
  std::vector<int> stack{0};
  std::vector<char> seen(vcount, 0);
  seen[0] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (const auto& inc : adjacency_[v]) {
      if (seen[inc.vertex]) continue;
      seen[inc.vertex] = 1;
      r.parent[inc.vertex] = v;
      r.parent_edge[inc.vertex] = inc.edge;
      r.children[v].push_back(inc.vertex);
      stack.push_back(inc.vertex);
    }
  }
  if (order.size() != vcount) throw InternalError("tree is not connected");

  std::vector<Label> min_label(vcount, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    Label m = is_leaf(v) ? label(v) : 0;
    for (int c : r.children[v]) {
      if (m == 0 || min_label[c] < m) m = min_label[c];
    }
    min_label[v] = m;
  }
  for (auto& kids : r.children) {
    std::sort(kids.begin(), kids.end(), [&](int a, int b) { return min_label[a] < min_label[b]; });
  }
  // Preorder again, now respecting the child order.
  r.preorder.clear();
  stack.assign(1, 0);
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    r.preorder.push_back(v);
    for (auto it = r.children[v].rbegin(); it != r.children[v].rend(); ++it) stack.push_back(*it);
  }
  rooting_ = std::move(r);
}

void Tree::finalize() {
  build_adjacency();
  build_rooting();
  if (edges_.size() + 1 != adjacency_.size()) throw InternalError("tree edge count mismatch");
  for (std::size_t v = 0; v < adjacency_.size(); ++v) {
    auto deg = adjacency_[v].size();
    bool ok = is_leaf(static_cast<int>(v)) ? deg == 1 : deg == 3;
    if (!ok) throw InternalError("vertex " + std::to_string(v) + " has degree " + std::to_string(deg));
  }

  // Leaf sets below every non-root vertex give the splits.
  const auto vcount = adjacency_.size();
  std::vector<std::vector<Label>> below(vcount);
  std::vector<EdgeId> ids(edges_.size());
  for (auto it = rooting_.preorder.rbegin(); it != rooting_.preorder.rend(); ++it) {
    int v = *it;
    if (is_leaf(v)) below[v].push_back(label(v));
    for (int c : rooting_.children[v]) {
      below[v].insert(below[v].end(), below[c].begin(), below[c].end());
    }
    if (rooting_.parent_edge[v] >= 0) {
      ids[rooting_.parent_edge[v]] = EdgeId::from_side(LeafSet(below[v]), leaf_count_);
    }
  }

  // Renumber edges in ascending EdgeId order.
  std::vector<std::size_t> perm(edges_.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });
  std::vector<Edge> sorted_edges;
  sorted_edges.reserve(edges_.size());
  edge_ids_.clear();
  for (auto e : perm) {
    sorted_edges.push_back(edges_[e]);
    edge_ids_.push_back(ids[e]);
  }
  edges_ = std::move(sorted_edges);
  build_adjacency();
  build_rooting();
}

// ---------------------------------------------------------------------------
// Queries

bool Tree::is_pendant(std::size_t edge) const {
  const auto& e = edges_.at(edge);
  return is_leaf(e.u) || is_leaf(e.v);
}

std::optional<std::size_t> Tree::find_edge(const EdgeId& id) const {
  const auto& side = id.side();
  if (side.empty() || static_cast<int>(side.size()) >= leaf_count_ || side.max_label() > leaf_count_) {
    return std::nullopt;
  }
  auto canonical = EdgeId::from_side(side, leaf_count_);
  auto it = std::lower_bound(edge_ids_.begin(), edge_ids_.end(), canonical);
  if (it == edge_ids_.end() || *it != canonical) return std::nullopt;
  return static_cast<std::size_t>(it - edge_ids_.begin());
}

std::size_t Tree::edge_index(const EdgeId& id) const {
  auto e = find_edge(id);
  if (!e) throw InputError("edge " + id.key() + " is not an edge of the tree");
  return *e;
}

LeafSet Tree::leaves_left_of(const EdgeId& id) const {
  edge_index(id);
  return id.side();
}

Tree Tree::relabel(std::span<const Label> perm) const {
  const auto n = static_cast<std::size_t>(leaf_count_);
  if (perm.size() != n) throw InputError("permutation must have " + std::to_string(n) + " entries");
  std::vector<char> hit(n, 0);
  for (Label p : perm) {
    if (p < 1 || p > leaf_count_ || hit[p - 1]) throw InputError("relabelling is not a bijection on 1..n");
    hit[p - 1] = 1;
  }
  auto map_vertex = [&](int v) { return is_leaf(v) ? perm[v] - 1 : v; };
  Tree out;
  out.leaf_count_ = leaf_count_;
  out.adjacency_.resize(adjacency_.size());
  for (const auto& e : edges_) out.edges_.push_back({map_vertex(e.u), map_vertex(e.v)});
  out.finalize();
  return out;
}

std::string Tree::serialize_below(int vertex) const {
  if (is_leaf(vertex)) return std::to_string(label(vertex));
  std::string out = "(";
  const auto& kids = rooting_.children[vertex];
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (i) out += ',';
    out += serialize_below(kids[i]);
  }
  return out + ")";
}

std::string Tree::serialize() const {
  return "(1," + serialize_below(rooting_.children[rooting_.root].front()) + ")";
}

bool Tree::operator==(const Tree& other) const {
  return leaf_count_ == other.leaf_count_ && edge_ids_ == other.edge_ids_;
}

}  // namespace tnsrank
