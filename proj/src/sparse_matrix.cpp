#include "rhpdhg/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rhpdhg/errors.hpp"

namespace rhpdhg {

namespace spmv_counter {
namespace {
std::atomic<std::uint64_t> g_count{0};
}
std::uint64_t value() { return g_count.load(std::memory_order_relaxed); }
void reset() { g_count.store(0, std::memory_order_relaxed); }
void add(std::uint64_t n) { g_count.fetch_add(n, std::memory_order_relaxed); }
}  // namespace spmv_counter

SparseMatrix::SparseMatrix(Index rows, Index cols, std::vector<Triplet> entries)
    : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw UsageError("matrix dimensions must be nonnegative");
  for (const Triplet& t : entries) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
      throw UsageError("matrix entry (" + std::to_string(t.row) + "," + std::to_string(t.col) +
                       ") out of bounds");
    if (std::isnan(t.value) || std::isinf(t.value))
      throw InvalidProblemError("matrix entry (" + std::to_string(t.row) + "," +
                                std::to_string(t.col) + ") is not finite");
  }
  std::erase_if(entries, [](const Triplet& t) { return t.value == 0.0; });

  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].row == entries[i - 1].row && entries[i].col == entries[i - 1].col)
      throw InvalidProblemError("duplicate matrix entry (" + std::to_string(entries[i].row) +
                                "," + std::to_string(entries[i].col) + ")");
  }

  const Index nz = static_cast<Index>(entries.size());
  row_ptr_.assign(static_cast<std::size_t>(rows) + 1, 0);
  col_idx_.resize(nz);
  val_csr_.resize(nz);
  for (const Triplet& t : entries) ++row_ptr_[static_cast<std::size_t>(t.row) + 1];
  for (Index i = 0; i < rows; ++i) row_ptr_[i + 1] += row_ptr_[i];
  for (Index e = 0; e < nz; ++e) {
    col_idx_[e] = entries[e].col;
    val_csr_[e] = entries[e].value;
  }

  // column-major layout from the same triples
  col_ptr_.assign(static_cast<std::size_t>(cols) + 1, 0);
  row_idx_.resize(nz);
  val_csc_.resize(nz);
  for (const Triplet& t : entries) ++col_ptr_[static_cast<std::size_t>(t.col) + 1];
  for (Index j = 0; j < cols; ++j) col_ptr_[j + 1] += col_ptr_[j];
  std::vector<Index> next(col_ptr_.begin(), col_ptr_.end() - 1);
  for (const Triplet& t : entries) {
    const Index slot = next[t.col]++;
    row_idx_[slot] = t.row;
    val_csc_[slot] = t.value;
  }
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> out) const {
  if (static_cast<Index>(x.size()) != cols_ || static_cast<Index>(out.size()) != rows_)
    throw UsageError("multiply: size mismatch");
  spmv_counter::add(1);
  for (Index i = 0; i < rows_; ++i) {
    double acc = 0.0;
    for (Index e = row_ptr_[i]; e < row_ptr_[i + 1]; ++e) acc += val_csr_[e] * x[col_idx_[e]];
    out[i] = acc;
  }
}

void SparseMatrix::multiply_transpose(std::span<const double> y, std::span<double> out) const {
  if (static_cast<Index>(y.size()) != rows_ || static_cast<Index>(out.size()) != cols_)
    throw UsageError("multiply_transpose: size mismatch");
  spmv_counter::add(1);
  for (Index j = 0; j < cols_; ++j) {
    double acc = 0.0;
    for (Index e = col_ptr_[j]; e < col_ptr_[j + 1]; ++e) acc += val_csc_[e] * y[row_idx_[e]];
    out[j] = acc;
  }
}

std::vector<double> SparseMatrix::multiply(const std::vector<double>& x) const {
  std::vector<double> out(static_cast<std::size_t>(rows_));
  multiply(x, out);
  return out;
}

std::vector<double> SparseMatrix::multiply_transpose(const std::vector<double>& y) const {
  std::vector<double> out(static_cast<std::size_t>(cols_));
  multiply_transpose(y, out);
  return out;
}

SparseMatrix SparseMatrix::scaled(std::span<const double> row_scale,
                                  std::span<const double> col_scale) const {
  if (static_cast<Index>(row_scale.size()) != rows_ ||
      static_cast<Index>(col_scale.size()) != cols_)
    throw UsageError("scaled: scale vector size mismatch");
  SparseMatrix result(*this);
  for (Index i = 0; i < rows_; ++i)
    for (Index e = row_ptr_[i]; e < row_ptr_[i + 1]; ++e)
      result.val_csr_[e] = row_scale[i] * val_csr_[e] * col_scale[col_idx_[e]];
  for (Index j = 0; j < cols_; ++j)
    for (Index e = col_ptr_[j]; e < col_ptr_[j + 1]; ++e)
      result.val_csc_[e] = col_scale[j] * val_csc_[e] * row_scale[row_idx_[e]];
  return result;
}

void SparseMatrix::max_abs(std::vector<double>& row_out, std::vector<double>& col_out) const {
  row_out.assign(static_cast<std::size_t>(rows_), 0.0);
  col_out.assign(static_cast<std::size_t>(cols_), 0.0);
  for (Index i = 0; i < rows_; ++i)
    for (Index e = row_ptr_[i]; e < row_ptr_[i + 1]; ++e) {
      const double a = std::abs(val_csr_[e]);
      row_out[i] = std::max(row_out[i], a);
      col_out[col_idx_[e]] = std::max(col_out[col_idx_[e]], a);
    }
}

void SparseMatrix::one_norms(std::vector<double>& row_out, std::vector<double>& col_out) const {
  row_out.assign(static_cast<std::size_t>(rows_), 0.0);
  col_out.assign(static_cast<std::size_t>(cols_), 0.0);
  for (Index i = 0; i < rows_; ++i)
    for (Index e = row_ptr_[i]; e < row_ptr_[i + 1]; ++e) {
      const double a = std::abs(val_csr_[e]);
      row_out[i] += a;
      col_out[col_idx_[e]] += a;
    }
}

std::vector<Triplet> SparseMatrix::to_triplets() const {
  std::vector<Triplet> out;
  out.reserve(static_cast<std::size_t>(nnz()));
  for (Index i = 0; i < rows_; ++i)
    for (Index e = row_ptr_[i]; e < row_ptr_[i + 1]; ++e)
      out.push_back({i, col_idx_[e], val_csr_[e]});
  return out;
}

bool SparseMatrix::same_pattern(const SparseMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && row_ptr_ == other.row_ptr_ &&
         col_idx_ == other.col_idx_;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  return a.same_pattern(b) && a.val_csr_ == b.val_csr_;
}

}  // namespace rhpdhg
