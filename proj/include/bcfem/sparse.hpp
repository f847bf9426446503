#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bcfem {

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Compressed sparse row matrix. Column indices are sorted and unique within
/// each row; duplicate triplets are summed on construction.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  static SparseMatrix from_triplets(int rows, int cols, std::span<const Triplet> entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int nnz() const { return static_cast<int>(values_.size()); }

  const std::vector<int>& row_offsets() const { return offsets_; }
  const std::vector<int>& col_indices() const { return indices_; }
  const std::vector<double>& values() const { return values_; }

  std::vector<double> matvec(std::span<const double> x) const;

  /// A[rows, cols] with renumbered indices; both index sets must be sorted.
  SparseMatrix extract_submatrix(std::span<const int> row_set, std::span<const int> col_set) const;

  SparseMatrix transpose() const;

  /// max_ij |A_ij - A_ji|.
  double max_abs_asymmetry() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<int> offsets_{0};
  std::vector<int> indices_;
  std::vector<double> values_;
};

/// C = alpha A + beta B.
SparseMatrix add_scaled(const SparseMatrix& a, double alpha, const SparseMatrix& b, double beta);

/// Sparse direct LU with fill-reducing ordering. Construction throws
/// SingularMatrixError if the factorization fails.
class SparseLUSolver {
 public:
  explicit SparseLUSolver(const SparseMatrix& a);
  ~SparseLUSolver();
  SparseLUSolver(SparseLUSolver&&) noexcept;
  SparseLUSolver& operator=(SparseLUSolver&&) noexcept;

  std::vector<double> solve(std::span<const double> b) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Direct solve with a residual contract: ||Ax - b||_2 / ||b||_2 <= 1e-10,
/// enforced after the solve. Dimension mismatches throw
/// std::invalid_argument; singular matrices throw SingularMatrixError.
std::vector<double> solve_linear(const SparseMatrix& a, std::span<const double> b);

/// Coordinate-format Matrix Market export for debugging.
void write_matrix_market(const SparseMatrix& a, const std::string& path);

}  // namespace bcfem
