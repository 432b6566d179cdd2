#ifndef PARAFERM_EXACTLA_HPP
#define PARAFERM_EXACTLA_HPP

#include <optional>
#include <utility>
#include <vector>

#include "paraferm/rational.hpp"

namespace paraferm::exactla {

// Sparse row: (column, value) pairs, columns strictly increasing, no zeros.
using SparseRow = std::vector<std::pair<int, Rat>>;

struct SparseMatrix {
  int ncols = 0;
  std::vector<SparseRow> rows;

  SparseMatrix() = default;
  explicit SparseMatrix(int cols) : ncols(cols) {}
  int nrows() const { return static_cast<int>(rows.size()); }
  void add_row(SparseRow r) { rows.push_back(std::move(r)); }
};

SparseRow row_from_dense(const std::vector<Rat>& v);
std::vector<Rat> row_to_dense(const SparseRow& r, int ncols);

// Row space of a matrix in reduced row-echelon form.  RREF is canonical:
// two Subspaces over the same ambient are equal iff their rows are equal.
struct Subspace {
  int ambient = 0;
  std::vector<SparseRow> rows;   // RREF rows, pivots normalized to 1
  std::vector<int> pivots;       // pivot column of each row

  int dim() const { return static_cast<int>(rows.size()); }
  bool operator==(const Subspace& o) const = default;
};

// Canonical RREF via fraction-free elimination (primitive integer rows,
// division deferred to a final normalization pass).  Deterministic pivoting:
// first nonzero in column order.
Subspace rref(const SparseMatrix& m);

// Right null space: basis of { v : M v = 0 }, canonicalized by rref.
Subspace kernel(const SparseMatrix& m);

// Coordinates of v in the RREF basis, or nullopt if v is outside the span.
std::optional<std::vector<Rat>> membership(const Subspace& b, const SparseRow& v);
bool contains(const Subspace& b, const SparseRow& v);

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);   // Zassenhaus

// Kernel of a (square) Gram matrix.
Subspace radical(const SparseMatrix& gram);

// Incremental row reduction used by closure sweeps: reduce v against the
// subspace, insert if independent.  Returns true if the dimension grew.
// Keeps the subspace in RREF so equality checks stay canonical.
bool absorb(Subspace& b, const SparseRow& v);

SparseRow apply(const SparseMatrix& m, const SparseRow& v);  // M v (v indexed by columns)

}  // namespace paraferm::exactla

#endif
