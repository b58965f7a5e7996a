#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "tnsrank/tree.hpp"

namespace tnsrank {

/// Bond bound per edge: a natural number >= 1 for every edge of a tree.
class EdgeFunction {
 public:
  EdgeFunction() = default;

  static EdgeFunction constant(const Tree& tree, std::uint64_t value);

  /// Keys are resolved against `tree`, so either side of a split may be given.
  void set(const Tree& tree, const EdgeId& edge, std::uint64_t value);

  /// Throws InputError when the edge has no value.
  std::uint64_t at(const EdgeId& edge) const;
  std::optional<std::uint64_t> find(const EdgeId& edge) const;

  /// The common value when every entry agrees, nullopt otherwise (or empty).
  std::optional<std::uint64_t> constant_value() const;

  const std::map<EdgeId, std::uint64_t>& values() const { return values_; }

  /// Values indexed by the tree's edge index. Throws InputError unless the
  /// domain is exactly the tree's edge set and every value is >= 1.
  std::vector<std::uint64_t> on_edges(const Tree& tree) const;

  bool operator==(const EdgeFunction&) const = default;

 private:
  std::map<EdgeId, std::uint64_t> values_;
};

}  // namespace tnsrank
