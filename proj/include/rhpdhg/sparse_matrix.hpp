#pragma once

#include <atomic>
#include <cstdint>
#include <span>
#include <vector>

namespace rhpdhg {

using Index = std::int64_t;

struct Triplet {
  Index row = 0;
  Index col = 0;
  double value = 0.0;
};

/// Counts sparse matrix-vector products performed since the last reset.
/// Used by tests to pin the operator-evaluation budget of the solve loop.
namespace spmv_counter {
std::uint64_t value();
void reset();
void add(std::uint64_t n);
}  // namespace spmv_counter

/// Immutable sparse matrix stored in both compressed-row and compressed-column
/// layouts so that A*x and A^T*y both stream contiguously. The two layouts
/// always encode the identical set of (i, j, value) triples; explicit zeros
/// are dropped at construction.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(Index rows, Index cols, std::vector<Triplet> entries);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  Index nnz() const { return static_cast<Index>(val_csr_.size()); }

  /// out = A * x. Sizes must match; counts as one product.
  void multiply(std::span<const double> x, std::span<double> out) const;
  /// out = A^T * y. Sizes must match; counts as one product.
  void multiply_transpose(std::span<const double> y, std::span<double> out) const;

  std::vector<double> multiply(const std::vector<double>& x) const;
  std::vector<double> multiply_transpose(const std::vector<double>& y) const;

  /// New matrix with values row_scale[i] * a_ij * col_scale[j]; identical pattern.
  SparseMatrix scaled(std::span<const double> row_scale, std::span<const double> col_scale) const;

  /// Per-row / per-column max |a_ij| and 1-norms (zero where a row/col is empty).
  void max_abs(std::vector<double>& row_out, std::vector<double>& col_out) const;
  void one_norms(std::vector<double>& row_out, std::vector<double>& col_out) const;

  std::vector<Triplet> to_triplets() const;
  bool same_pattern(const SparseMatrix& other) const;

  // Raw compressed layouts (row-major and column-major).
  std::span<const Index> row_ptr() const { return row_ptr_; }
  std::span<const Index> col_index() const { return col_idx_; }
  std::span<const double> csr_values() const { return val_csr_; }
  std::span<const Index> col_ptr() const { return col_ptr_; }
  std::span<const Index> row_index() const { return row_idx_; }
  std::span<const double> csc_values() const { return val_csc_; }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<Index> row_ptr_{0};
  std::vector<Index> col_idx_;
  std::vector<double> val_csr_;
  std::vector<Index> col_ptr_{0};
  std::vector<Index> row_idx_;
  std::vector<double> val_csc_;
};

}  // namespace rhpdhg
