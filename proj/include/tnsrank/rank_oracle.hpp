#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "tnsrank/prime_field.hpp"
#include "tnsrank/tns_model.hpp"
#include "tnsrank/tree.hpp"

namespace tnsrank {

/// Largest tensor the oracle will materialize (entries).
inline constexpr std::uint64_t kMaxTensorEntries = 1ULL << 24;
/// Largest intermediate during contraction (entries).
inline constexpr std::uint64_t kMaxIntermediateEntries = 1ULL << 26;

/// Dense tensor over a prime field. Axis i belongs to leaf i + 1; entries are
/// row-major with the last axis fastest.
class DenseTensor {
 public:
  /// All-zero tensor.
  DenseTensor(std::vector<std::size_t> shape, PrimeField field);
  /// Throws InputError if the entry count or any residue is out of range.
  DenseTensor(std::vector<std::size_t> shape, std::vector<std::uint64_t> entries, PrimeField field);

  /// e_{i_1} (x) ... (x) e_{i_n} for 0-based indices.
  static DenseTensor elementary(std::vector<std::size_t> shape, std::span<const std::size_t> index,
                                PrimeField field);

  const std::vector<std::size_t>& shape() const { return shape_; }
  int order() const { return static_cast<int>(shape_.size()); }
  const std::vector<std::uint64_t>& entries() const { return entries_; }
  const PrimeField& field() const { return field_; }
  bool is_zero() const;

  bool operator==(const DenseTensor&) const = default;

 private:
  std::vector<std::size_t> shape_;
  std::vector<std::uint64_t> entries_;
  PrimeField field_;
};

/// Rank over the field of a rows x cols row-major matrix, by elimination.
std::size_t matrix_rank(std::vector<std::uint64_t> entries, std::size_t rows, std::size_t cols,
                        const PrimeField& field);

/// Random tensor network on the model's tree, contracted leaf to root. Each
/// internal vertex holds a core with one axis per incident edge; the bond of
/// an internal edge is f(e), the bond of a leaf edge is min(f(e), dims(l)),
/// and every leaf carries a dims(l) x bond matrix. Entries are uniform in the
/// field. Deterministic in (model, seed, field).
DenseTensor sample_tns_tensor(const TnsModel& model, std::uint64_t seed, const PrimeField& field = PrimeField());

/// Rank of the flattening with rows indexed by the leaves in `subset` and
/// columns by the rest.
std::size_t flattening_rank(const DenseTensor& tensor, const LeafSet& subset);

/// Maximum flattening rank over `trials` samples with seeds seed, seed+1, ...
std::size_t estimate_generic_rank(const TnsModel& model, const LeafSet& subset, std::size_t trials,
                                  std::uint64_t seed, const PrimeField& field = PrimeField());

/// True iff every edge flattening has rank at most f(edge).
bool check_membership(const DenseTensor& tensor, const TnsModel& model);

/// Outer product; the second tensor's leaves follow the first's.
DenseTensor kron(const DenseTensor& first, const DenseTensor& second);

/// Text dump: a header line with shape and prime, then one line per fibre of
/// the last axis, entries as decimal residues.
void dump_tensor(std::ostream& out, const DenseTensor& tensor);

}  // namespace tnsrank
