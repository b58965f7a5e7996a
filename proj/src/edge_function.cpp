#include "tnsrank/edge_function.hpp"

#include "tnsrank/errors.hpp"

namespace tnsrank {

EdgeFunction EdgeFunction::constant(const Tree& tree, std::uint64_t value) {
  EdgeFunction f;
  for (const auto& id : tree.edge_ids()) f.values_[id] = value;
  return f;
}

void EdgeFunction::set(const Tree& tree, const EdgeId& edge, std::uint64_t value) {
  values_[tree.edge_id(tree.edge_index(edge))] = value;
}

std::uint64_t EdgeFunction::at(const EdgeId& edge) const {
  auto it = values_.find(edge);
  if (it == values_.end()) throw InputError("edge function has no value for edge " + edge.key());
  return it->second;
}

std::optional<std::uint64_t> EdgeFunction::find(const EdgeId& edge) const {
  auto it = values_.find(edge);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint64_t> EdgeFunction::constant_value() const {
  if (values_.empty()) return std::nullopt;
  auto first = values_.begin()->second;
  for (const auto& [id, v] : values_) {
    if (v != first) return std::nullopt;
  }
  return first;
}

std::vector<std::uint64_t> EdgeFunction::on_edges(const Tree& tree) const {
  if (values_.size() != tree.edge_count()) {
    throw InputError("edge function has " + std::to_string(values_.size()) + " entries but the tree has " +
                     std::to_string(tree.edge_count()) + " edges");
  }
  std::vector<std::uint64_t> out;
  out.reserve(tree.edge_count());
  for (const auto& id : tree.edge_ids()) {
    auto v = at(id);
    if (v == 0) throw InputError("edge function value must be >= 1 (edge " + id.key() + " has 0)");
    out.push_back(v);
  }
  return out;
}

}  // namespace tnsrank
