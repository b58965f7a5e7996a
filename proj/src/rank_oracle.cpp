#include "tnsrank/rank_oracle.hpp"

#include <algorithm>
#include <ostream>

#include "tnsrank/errors.hpp"
#include "tnsrank/rng.hpp"

namespace tnsrank {

namespace {

std::uint64_t checked_product(std::span<const std::size_t> extents, std::uint64_t cap, const char* what) {
  std::uint64_t total = 1;
  for (auto d : extents) {
    if (d != 0 && total > cap / d) {
      throw ResourceError(std::string(what) + " exceeds the cap of " + std::to_string(cap) + " entries");
    }
    total *= d;
  }
  if (total > cap) {
    throw ResourceError(std::string(what) + " has " + std::to_string(total) + " entries, cap is " +
                        std::to_string(cap));
  }
  return total;
}

std::uint64_t entry_count(const std::vector<std::size_t>& shape) {
  return checked_product(shape, kMaxTensorEntries, "tensor");
}

}  // namespace

// ---------------------------------------------------------------------------
// DenseTensor

DenseTensor::DenseTensor(std::vector<std::size_t> shape, PrimeField field)
    : shape_(std::move(shape)), field_(field) {
  entries_.assign(entry_count(shape_), 0);
}

DenseTensor::DenseTensor(std::vector<std::size_t> shape, std::vector<std::uint64_t> entries, PrimeField field)
    : shape_(std::move(shape)), entries_(std::move(entries)), field_(field) {
  if (entries_.size() != entry_count(shape_)) {
    throw InputError("tensor has " + std::to_string(entries_.size()) + " entries, shape needs " +
                     std::to_string(entry_count(shape_)));
  }
  for (auto x : entries_) {
    if (x >= field_.prime()) throw InputError("tensor entry " + std::to_string(x) + " is not a field residue");
  }
}

DenseTensor DenseTensor::elementary(std::vector<std::size_t> shape, std::span<const std::size_t> index,
                                    PrimeField field) {
  if (index.size() != shape.size()) throw InputError("index and shape differ in length");
  DenseTensor t(std::move(shape), field);
  std::size_t offset = 0;
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (index[i] >= t.shape_[i]) throw InputError("index out of range");
    offset = offset * t.shape_[i] + index[i];
  }
  t.entries_[offset] = 1;
  return t;
}

bool DenseTensor::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](std::uint64_t x) { return x == 0; });
}

// ---------------------------------------------------------------------------
// Rank

std::size_t matrix_rank(std::vector<std::uint64_t> a, std::size_t rows, std::size_t cols, const PrimeField& field) {
  if (a.size() != rows * cols) throw InputError("matrix entry count does not match its shape");
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot * cols + col] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(pivot * cols),
                       a.begin() + static_cast<std::ptrdiff_t>((pivot + 1) * cols),
                       a.begin() + static_cast<std::ptrdiff_t>(rank * cols));
    }
    std::uint64_t* prow = &a[rank * cols];
    const std::uint64_t scale = field.inv(prow[col]);
    for (std::size_t j = col; j < cols; ++j) prow[j] = field.mul(prow[j], scale);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      std::uint64_t* row = &a[i * cols];
      const std::uint64_t factor = row[col];
      if (factor == 0) continue;
      for (std::size_t j = col; j < cols; ++j) {
        if (prow[j]) row[j] = field.sub(row[j], field.mul(factor, prow[j]));
      }
    }
    ++rank;
  }
  return rank;
}

std::size_t flattening_rank(const DenseTensor& tensor, const LeafSet& subset) {
  const int order = tensor.order();
  if (subset.max_label() > order) {
    throw InputError("subset label " + std::to_string(subset.max_label()) + " exceeds tensor order " +
                     std::to_string(order));
  }
  const auto& shape = tensor.shape();
  auto in_rows = subset.indicator(order);
  std::size_t rows = 1;
  std::size_t cols = 1;
  for (int i = 0; i < order; ++i) (in_rows[i] ? rows : cols) *= shape[i];

  // Row and column strides per axis, row-major within each side.
  std::vector<std::size_t> stride(static_cast<std::size_t>(order));
  std::size_t rs = 1;
  std::size_t cs = 1;
  for (int i = order - 1; i >= 0; --i) {
    if (in_rows[i]) {
      stride[i] = rs;
      rs *= shape[i];
    } else {
      stride[i] = cs;
      cs *= shape[i];
    }
  }

  std::vector<std::uint64_t> matrix(rows * cols);
  std::vector<std::size_t> index(static_cast<std::size_t>(order), 0);
  std::size_t r = 0;
  std::size_t c = 0;
  for (std::uint64_t x : tensor.entries()) {
    matrix[r * cols + c] = x;
    // Odometer step, last axis fastest.
    for (int i = order - 1; i >= 0; --i) {
      auto& acc = in_rows[i] ? r : c;
      if (++index[i] < shape[i]) {
        acc += stride[i];
        break;
      }
      acc -= stride[i] * (shape[i] - 1);
      index[i] = 0;
    }
  }
  return matrix_rank(std::move(matrix), rows, cols, tensor.field());
}

// ---------------------------------------------------------------------------
// Sampling

namespace {

// Contraction of a subtree: rows range over the subtree's leaves (in `axes`
// order, row-major), columns over the bond to the parent.
struct Partial {
  std::vector<Label> axes;
  std::vector<std::size_t> extents;
  std::size_t rows = 1;
  std::size_t bond = 1;
  std::vector<std::uint64_t> data;
};

std::vector<std::uint64_t> random_block(std::size_t count, CounterRng& rng, const PrimeField& field) {
  std::vector<std::uint64_t> out(count);
  for (auto& x : out) x = rng.uniform(field.prime());
  return out;
}

std::size_t bond_of(const TnsModel& model, const std::vector<std::uint64_t>& f, std::size_t edge) {
  const auto& tree = model.tree();
  std::uint64_t m = f[edge];
  const auto& e = tree.edges()[edge];
  for (int end : {e.u, e.v}) {
    if (tree.is_leaf(end)) m = std::min(m, model.dim(tree.label(end)));
  }
  return static_cast<std::size_t>(m);
}

}  // namespace

DenseTensor sample_tns_tensor(const TnsModel& model, std::uint64_t seed, const PrimeField& field) {
  const auto& tree = model.tree();
  const auto& rooting = tree.rooting();
  const auto f = model.f().on_edges(tree);
  std::vector<std::size_t> shape;
  for (auto d : model.dims()) shape.push_back(static_cast<std::size_t>(d));
  entry_count(shape);

  CounterRng rng(seed, kTensorStream);
  std::vector<Partial> partial(tree.vertex_count());
  for (auto it = rooting.preorder.rbegin(); it != rooting.preorder.rend(); ++it) {
    const int v = *it;
    if (v == rooting.root) continue;
    const auto bond = bond_of(model, f, static_cast<std::size_t>(rooting.parent_edge[v]));
    Partial& out = partial[v];
    out.bond = bond;
    if (tree.is_leaf(v)) {
      const auto d = static_cast<std::size_t>(model.dim(tree.label(v)));
      out.axes = {tree.label(v)};
      out.extents = {d};
      out.rows = d;
      out.data = random_block(d * bond, rng, field);
      continue;
    }
    const auto& kids = rooting.children[v];
    Partial& left = partial[kids[0]];
    Partial& right = partial[kids[1]];
    const std::size_t m1 = left.bond;
    const std::size_t m2 = right.bond;
    checked_product(std::vector<std::size_t>{m1, m2, bond}, kMaxIntermediateEntries, "core");
    auto core = random_block(m1 * m2 * bond, rng, field);  // core[(a1 * m2 + a2) * bond + b]

    checked_product(std::vector<std::size_t>{m1, right.rows, bond}, kMaxIntermediateEntries, "intermediate");
    checked_product(std::vector<std::size_t>{left.rows, right.rows, bond}, kMaxIntermediateEntries,
                    "intermediate");
    // y[(a1 * R2 + r2) * bond + b] = sum_a2 right[r2, a2] core[a1, a2, b]
    const std::size_t r1 = left.rows;
    const std::size_t r2 = right.rows;
    std::vector<std::uint64_t> y(m1 * r2 * bond, 0);
    for (std::size_t a1 = 0; a1 < m1; ++a1) {
      for (std::size_t row = 0; row < r2; ++row) {
        std::uint64_t* dst = &y[(a1 * r2 + row) * bond];
        for (std::size_t a2 = 0; a2 < m2; ++a2) {
          const std::uint64_t w = right.data[row * m2 + a2];
          if (w == 0) continue;
          const std::uint64_t* src = &core[(a1 * m2 + a2) * bond];
          for (std::size_t b = 0; b < bond; ++b) dst[b] = field.add(dst[b], field.mul(w, src[b]));
        }
      }
    }
    // out[(row1 * R2 + row2) * bond + b] = sum_a1 left[row1, a1] y[a1, row2, b]
    out.data.assign(r1 * r2 * bond, 0);
    for (std::size_t row1 = 0; row1 < r1; ++row1) {
      std::uint64_t* dst = &out.data[row1 * r2 * bond];
      for (std::size_t a1 = 0; a1 < m1; ++a1) {
        const std::uint64_t w = left.data[row1 * m1 + a1];
        if (w == 0) continue;
        const std::uint64_t* src = &y[a1 * r2 * bond];
        for (std::size_t k = 0; k < r2 * bond; ++k) dst[k] = field.add(dst[k], field.mul(w, src[k]));
      }
    }
    out.axes = left.axes;
    out.axes.insert(out.axes.end(), right.axes.begin(), right.axes.end());
    out.extents = left.extents;
    out.extents.insert(out.extents.end(), right.extents.begin(), right.extents.end());
    out.rows = r1 * r2;
    left = Partial{};
    right = Partial{};
  }

  // Root leaf 1 closes the network through its own matrix.
  const int root = rooting.root;
  const int child = rooting.children[root].front();
  Partial& below = partial[child];
  const std::size_t bond = below.bond;
  const auto d1 = static_cast<std::size_t>(model.dim(tree.label(root)));
  auto root_matrix = random_block(d1 * bond, rng, field);
  std::vector<std::uint64_t> joined(d1 * below.rows, 0);
  for (std::size_t i = 0; i < d1; ++i) {
    for (std::size_t row = 0; row < below.rows; ++row) {
      std::uint64_t acc = 0;
      for (std::size_t b = 0; b < bond; ++b) {
        acc = field.add(acc, field.mul(root_matrix[i * bond + b], below.data[row * bond + b]));
      }
      joined[i * below.rows + row] = acc;
    }
  }
  std::vector<Label> axes{tree.label(root)};
  axes.insert(axes.end(), below.axes.begin(), below.axes.end());
  std::vector<std::size_t> extents{d1};
  extents.insert(extents.end(), below.extents.begin(), below.extents.end());

  // Reorder axes to label order.
  const auto order = axes.size();
  std::vector<std::size_t> src_stride(order);
  std::size_t s = 1;
  for (std::size_t i = order; i-- > 0;) {
    src_stride[i] = s;
    s *= extents[i];
  }
  std::vector<std::size_t> stride_by_label(order);
  for (std::size_t i = 0; i < order; ++i) stride_by_label[axes[i] - 1] = src_stride[i];

  std::vector<std::uint64_t> entries(joined.size());
  std::vector<std::size_t> index(order, 0);
  std::size_t src = 0;
  for (auto& x : entries) {
    x = joined[src];
    for (std::size_t i = order; i-- > 0;) {
      if (++index[i] < shape[i]) {
        src += stride_by_label[i];
        break;
      }
      src -= stride_by_label[i] * (shape[i] - 1);
      index[i] = 0;
    }
  }
  return DenseTensor(std::move(shape), std::move(entries), field);
}

std::size_t estimate_generic_rank(const TnsModel& model, const LeafSet& subset, std::size_t trials,
                                  std::uint64_t seed, const PrimeField& field) {
  if (trials == 0) throw InputError("estimate_generic_rank needs at least one trial");
  if (subset.max_label() > model.tree().leaf_count()) {
    throw InputError("subset label " + std::to_string(subset.max_label()) + " is not a leaf of the model");
  }
  std::size_t best = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    best = std::max(best, flattening_rank(sample_tns_tensor(model, seed + t, field), subset));
  }
  return best;
}

bool check_membership(const DenseTensor& tensor, const TnsModel& model) {
  const auto& dims = model.dims();
  const auto& shape = tensor.shape();
  if (shape.size() != dims.size() || !std::equal(shape.begin(), shape.end(), dims.begin())) {
    throw InputError("tensor shape does not match the model's leaf dimensions");
  }
  const auto& tree = model.tree();
  for (std::size_t e = 0; e < tree.edge_count(); ++e) {
    const auto& id = tree.edge_id(e);
    if (flattening_rank(tensor, id.side()) > model.f().at(id)) return false;
  }
  return true;
}

DenseTensor kron(const DenseTensor& first, const DenseTensor& second) {
  if (!(first.field() == second.field())) throw InputError("kron of tensors over different primes");
  auto shape = first.shape();
  shape.insert(shape.end(), second.shape().begin(), second.shape().end());
  entry_count(shape);
  const auto& a = first.entries();
  const auto& b = second.entries();
  std::vector<std::uint64_t> entries;
  entries.reserve(a.size() * b.size());
  for (auto x : a) {
    for (auto y : b) entries.push_back(first.field().mul(x, y));
  }
  return DenseTensor(std::move(shape), std::move(entries), first.field());
}

void dump_tensor(std::ostream& out, const DenseTensor& tensor) {
  out << "shape";
  for (auto d : tensor.shape()) out << ' ' << d;
  out << " prime " << tensor.field().prime() << '\n';
  const std::size_t last = tensor.shape().empty() ? 1 : tensor.shape().back();
  const auto& entries = tensor.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    out << entries[i] << ((i + 1) % last == 0 ? '\n' : ' ');
  }
}

}  // namespace tnsrank
