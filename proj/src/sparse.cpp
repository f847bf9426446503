#include "bcfem/sparse.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

namespace bcfem {

SparseMatrix SparseMatrix::from_triplets(int rows, int cols, std::span<const Triplet> entries) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("from_triplets: negative shape");
  for (const auto& t : entries) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols) {
      throw std::out_of_range("from_triplets: index out of range");
    }
  }

  SparseMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.offsets_.assign(rows + 1, 0);
  for (const auto& t : entries) ++m.offsets_[t.row + 1];
  std::partial_sum(m.offsets_.begin(), m.offsets_.end(), m.offsets_.begin());

  std::vector<int> cursor(m.offsets_.begin(), m.offsets_.end() - 1);
  std::vector<int> cols_raw(entries.size());
  std::vector<double> vals_raw(entries.size());
  for (const auto& t : entries) {
    const int pos = cursor[t.row]++;
    cols_raw[pos] = t.col;
    vals_raw[pos] = t.value;
  }

  // Per-row stable sort by column; duplicates then sum in insertion order,
  // which keeps assembly deterministic for a fixed triplet order.
  m.indices_.reserve(entries.size());
  m.values_.reserve(entries.size());
  std::vector<int> order;
  std::vector<int> new_offsets(rows + 1, 0);
  for (int r = 0; r < rows; ++r) {
    const int begin = m.offsets_[r], end = m.offsets_[r + 1];
    order.resize(end - begin);
    std::iota(order.begin(), order.end(), begin);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return cols_raw[a] < cols_raw[b]; });
    for (int idx : order) {
      if (!m.indices_.empty() && static_cast<int>(m.indices_.size()) > new_offsets[r] &&
          m.indices_.back() == cols_raw[idx]) {
        m.values_.back() += vals_raw[idx];
      } else {
        m.indices_.push_back(cols_raw[idx]);
        m.values_.push_back(vals_raw[idx]);
      }
    }
    new_offsets[r + 1] = static_cast<int>(m.indices_.size());
  }
  m.offsets_ = std::move(new_offsets);
  return m;
}

std::vector<double> SparseMatrix::matvec(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("matvec: dimension mismatch");
  std::vector<double> y(rows_, 0.0);
  for (int r = 0; r < rows_; ++r) {
    double acc = 0.0;
    for (int k = offsets_[r]; k < offsets_[r + 1]; ++k) acc += values_[k] * x[indices_[k]];
    y[r] = acc;
  }
  return y;
}

SparseMatrix SparseMatrix::extract_submatrix(std::span<const int> row_set,
                                             std::span<const int> col_set) const {
  auto check_sorted = [this](std::span<const int> s, int bound) {
    for (size_t i = 0; i < s.size(); ++i) {
      if (s[i] < 0 || s[i] >= bound) throw std::out_of_range("extract_submatrix: index out of range");
      if (i > 0 && s[i] <= s[i - 1]) throw std::invalid_argument("extract_submatrix: index set not sorted");
    }
  };
  check_sorted(row_set, rows_);
  check_sorted(col_set, cols_);

  std::vector<int> col_map(cols_, -1);
  for (size_t j = 0; j < col_set.size(); ++j) col_map[col_set[j]] = static_cast<int>(j);

  SparseMatrix m;
  m.rows_ = static_cast<int>(row_set.size());
  m.cols_ = static_cast<int>(col_set.size());
  m.offsets_.assign(m.rows_ + 1, 0);
  for (int r = 0; r < m.rows_; ++r) {
    const int src = row_set[r];
    for (int k = offsets_[src]; k < offsets_[src + 1]; ++k) {
      const int c = col_map[indices_[k]];
      if (c < 0) continue;
      m.indices_.push_back(c);
      m.values_.push_back(values_[k]);
    }
    m.offsets_[r + 1] = static_cast<int>(m.indices_.size());
  }
  return m;
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<Triplet> trips;
  trips.reserve(nnz());
  for (int r = 0; r < rows_; ++r) {
    for (int k = offsets_[r]; k < offsets_[r + 1]; ++k) trips.push_back({indices_[k], r, values_[k]});
  }
  return from_triplets(cols_, rows_, trips);
}

double SparseMatrix::max_abs_asymmetry() const {
  const SparseMatrix t = transpose();
  double worst = 0.0;
  for (int r = 0; r < rows_; ++r) {
    int ka = offsets_[r], kb = t.offsets_[r];
    const int ea = offsets_[r + 1], eb = t.offsets_[r + 1];
    while (ka < ea || kb < eb) {
      const int ca = ka < ea ? indices_[ka] : cols_;
      const int cb = kb < eb ? t.indices_[kb] : cols_;
      if (ca == cb) {
        worst = std::max(worst, std::abs(values_[ka] - t.values_[kb]));
        ++ka;
        ++kb;
      } else if (ca < cb) {
        worst = std::max(worst, std::abs(values_[ka++]));
      } else {
        worst = std::max(worst, std::abs(t.values_[kb++]));
      }
    }
  }
  return worst;
}

SparseMatrix add_scaled(const SparseMatrix& a, double alpha, const SparseMatrix& b, double beta) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("add_scaled: shape mismatch");
  }
  std::vector<Triplet> trips;
  trips.reserve(a.nnz() + b.nnz());
  for (int r = 0; r < a.rows(); ++r) {
    for (int k = a.row_offsets()[r]; k < a.row_offsets()[r + 1]; ++k) {
      trips.push_back({r, a.col_indices()[k], alpha * a.values()[k]});
    }
    for (int k = b.row_offsets()[r]; k < b.row_offsets()[r + 1]; ++k) {
      trips.push_back({r, b.col_indices()[k], beta * b.values()[k]});
    }
  }
  return SparseMatrix::from_triplets(a.rows(), a.cols(), trips);
}

namespace {

Eigen::SparseMatrix<double> to_eigen(const SparseMatrix& a) {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(a.nnz());
  for (int r = 0; r < a.rows(); ++r) {
    for (int k = a.row_offsets()[r]; k < a.row_offsets()[r + 1]; ++k) {
      trips.emplace_back(r, a.col_indices()[k], a.values()[k]);
    }
  }
  Eigen::SparseMatrix<double> m(a.rows(), a.cols());
  m.setFromTriplets(trips.begin(), trips.end());
  m.makeCompressed();
  return m;
}

}  // namespace

struct SparseLUSolver::Impl {
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  int n = 0;
};

SparseLUSolver::SparseLUSolver(const SparseMatrix& a) : impl_(std::make_unique<Impl>()) {
  if (a.rows() != a.cols()) throw std::invalid_argument("SparseLUSolver: matrix must be square");
  impl_->n = a.rows();
  const auto m = to_eigen(a);
  impl_->lu.compute(m);
  if (impl_->lu.info() != Eigen::Success) {
    throw SingularMatrixError("SparseLUSolver: factorization failed (singular matrix)");
  }
}

SparseLUSolver::~SparseLUSolver() = default;
SparseLUSolver::SparseLUSolver(SparseLUSolver&&) noexcept = default;
SparseLUSolver& SparseLUSolver::operator=(SparseLUSolver&&) noexcept = default;

std::vector<double> SparseLUSolver::solve(std::span<const double> b) const {
  if (static_cast<int>(b.size()) != impl_->n) throw std::invalid_argument("solve: dimension mismatch");
  Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(b.data(), b.size());
  Eigen::VectorXd x = impl_->lu.solve(rhs);
  if (impl_->lu.info() != Eigen::Success) throw SingularMatrixError("SparseLUSolver: solve failed");
  return {x.data(), x.data() + x.size()};
}

std::vector<double> solve_linear(const SparseMatrix& a, std::span<const double> b) {
  if (a.rows() != a.cols()) throw std::invalid_argument("solve_linear: matrix must be square");
  if (static_cast<int>(b.size()) != a.rows()) throw std::invalid_argument("solve_linear: dimension mismatch");

  const SparseLUSolver lu(a);
  std::vector<double> x = lu.solve(b);

  const std::vector<double> ax = a.matvec(x);
  double rnorm = 0.0, bnorm = 0.0;
  for (size_t i = 0; i < b.size(); ++i) {
    rnorm += (ax[i] - b[i]) * (ax[i] - b[i]);
    bnorm += b[i] * b[i];
  }
  rnorm = std::sqrt(rnorm);
  bnorm = std::sqrt(bnorm);
  if (rnorm > 1e-10 * std::max(bnorm, 1e-300) && rnorm > 1e-13) {
    throw SingularMatrixError("solve_linear: residual contract violated (matrix nearly singular)");
  }
  return x;
}

void write_matrix_market(const SparseMatrix& a, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_matrix_market: cannot open " + path);
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.rows() << " " << a.cols() << " " << a.nnz() << "\n";
  out.precision(17);
  for (int r = 0; r < a.rows(); ++r) {
    for (int k = a.row_offsets()[r]; k < a.row_offsets()[r + 1]; ++k) {
      out << r + 1 << " " << a.col_indices()[k] + 1 << " " << a.values()[k] << "\n";
    }
  }
}

}  // namespace bcfem
