#pragma once

// Exact dense and sparse linear algebra over a field.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hecat/rational.hpp"

namespace hecat {

template <class F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const F& x) { return hecat::is_zero(x); });
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const F& x = a(i, k);
        if (hecat::is_zero(x)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (hecat::is_zero(b(k, j))) continue;
          c(i, j) += x * b(k, j);
        }
      }
    return c;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference: shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  Matrix scaled(const F& s) const {
    Matrix m = *this;
    for (auto& x : m.data_) x *= s;
    return m;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::vector<F> column(std::size_t j) const {
    std::vector<F> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  std::vector<F> apply(const std::vector<F>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("matrix apply: shape mismatch");
    std::vector<F> y(rows_, F(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!hecat::is_zero(x[j])) y[i] += (*this)(i, j) * x[j];
    return y;
  }

  /// Block placement helper: copies `b` with its top-left corner at (r, c).
  void place(std::size_t r, std::size_t c, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r + i, c + j) = b(i, j);
  }
  Matrix block(std::size_t r, std::size_t c, std::size_t nr, std::size_t nc) const {
    Matrix m(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r + i, c + j);
    return m;
  }

  static Matrix from_columns(std::size_t rows, const std::vector<std::vector<F>>& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    return m;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> data_;
};

/// In-place reduced row echelon form. Returns pivot columns.
template <class F>
std::vector<std::size_t> rref_in_place(Matrix<F>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && is_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    F inv = F(1) / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      F f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        if (!is_zero(m(row, j))) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class F>
std::size_t rank(Matrix<F> m) {
  return rref_in_place(m).size();
}

/// Columns of the result span the kernel of m.
template <class F>
Matrix<F> nullspace(Matrix<F> m) {
  const std::size_t n = m.cols();
  auto pivots = rref_in_place(m);
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<F>> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<F> v(n, F(0));
    v[f] = F(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, f);
    basis.push_back(std::move(v));
  }
  return Matrix<F>::from_columns(n, basis);
}

/// Some solution of a x = b, if one exists.
template <class F>
std::optional<std::vector<F>> solve(const Matrix<F>& a, const std::vector<F>& b) {
  Matrix<F> aug(a.rows(), a.cols() + 1);
  aug.place(0, 0, a);
  for (std::size_t i = 0; i < a.rows(); ++i) aug(i, a.cols()) = b[i];
  auto pivots = rref_in_place(aug);
  std::vector<F> x(a.cols(), F(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == a.cols()) return std::nullopt;
    x[pivots[r]] = aug(r, a.cols());
  }
  return x;
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  const std::size_t n = a.rows();
  Matrix<F> aug(n, 2 * n);
  aug.place(0, 0, a);
  for (std::size_t i = 0; i < n; ++i) aug(i, n + i) = F(1);
  auto pivots = rref_in_place(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  return aug.block(0, n, n, n);
}

// ---------------------------------------------------------------------------
// Sparse rows and an incremental echelon basis.

template <class F>
using SparseRow = std::vector<std::pair<std::size_t, F>>;

/// Incrementally maintained row echelon form of a span of sparse rows.
/// Supports rank queries, span membership, and kernel extraction.
template <class F>
class SparseEchelon {
 public:
  explicit SparseEchelon(std::size_t ncols = 0) : ncols_(ncols) {}

  std::size_t rank() const { return rows_.size(); }
  std::size_t ncols() const { return ncols_; }

  /// Reduces `row` against the basis; returns the remainder (empty iff in span).
  SparseRow<F> reduce(const SparseRow<F>& row) const {
    std::map<std::size_t, F> work;
    for (const auto& [c, x] : row) work[c] += x;
    reduce_work(work);
    SparseRow<F> out;
    for (auto& [c, x] : work)
      if (!is_zero(x)) out.emplace_back(c, std::move(x));
    return out;
  }

  /// Adds `row` to the span. Returns true if the rank grew.
  bool add(const SparseRow<F>& row) {
    SparseRow<F> r = reduce(row);
    if (r.empty()) return false;
    F inv = F(1) / r.front().second;
    for (auto& e : r) e.second *= inv;
    pivot_of_.emplace(r.front().first, rows_.size());
    rows_.push_back(std::move(r));
    return true;
  }

  bool contains(const SparseRow<F>& row) const { return reduce(row).empty(); }

  /// Basis of {x : <row_i, x> = 0 for every added row}, i.e. the kernel of
  /// the matrix whose rows were added.
  std::vector<SparseRow<F>> kernel() const {
    // Back-substitute to reduced form.
    std::vector<SparseRow<F>> red = rows_;
    std::vector<std::pair<std::size_t, std::size_t>> order;  // (pivot col, row)
    for (const auto& [c, r] : pivot_of_) order.emplace_back(c, r);
    std::sort(order.begin(), order.end());
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      std::size_t r = it->second;
      std::map<std::size_t, F> work;
      for (const auto& [c, x] : red[r]) work[c] = x;
      for (auto w = work.upper_bound(it->first); w != work.end();) {
        auto p = pivot_of_.find(w->first);
        if (p == pivot_of_.end() || is_zero(w->second)) {
          ++w;
          continue;
        }
        F f = w->second;
        std::size_t col = w->first;
        for (const auto& [c, x] : red[p->second]) work[c] -= f * x;
        w = work.upper_bound(col);
      }
      SparseRow<F> out;
      for (auto& [c, x] : work)
        if (!is_zero(x)) out.emplace_back(c, x);
      red[r] = std::move(out);
    }
    std::vector<SparseRow<F>> basis;
    std::vector<std::vector<std::pair<std::size_t, F>>> by_free(ncols_);
    for (const auto& [pc, r] : pivot_of_)
      for (const auto& [c, x] : red[r])
        if (c != pc) by_free[c].emplace_back(pc, x);
    for (std::size_t f = 0; f < ncols_; ++f) {
      if (pivot_of_.count(f)) continue;
      SparseRow<F> v;
      v.emplace_back(f, F(1));
      for (const auto& [pc, x] : by_free[f]) v.emplace_back(pc, -x);
      std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      basis.push_back(std::move(v));
    }
    return basis;
  }

  bool is_pivot(std::size_t c) const { return pivot_of_.count(c) > 0; }

  /// Columns that carry a pivot.
  std::vector<std::size_t> pivot_columns() const {
    std::vector<std::size_t> cols;
    for (const auto& [c, r] : pivot_of_) cols.push_back(c);
    return cols;
  }

 private:
  void reduce_work(std::map<std::size_t, F>& work) const {
    auto it = work.begin();
    while (it != work.end()) {
      if (is_zero(it->second)) {
        it = work.erase(it);
        continue;
      }
      auto p = pivot_of_.find(it->first);
      if (p == pivot_of_.end()) {
        ++it;
        continue;
      }
      F f = it->second;
      std::size_t col = it->first;
      for (const auto& [c, x] : rows_[p->second]) work[c] -= f * x;
      it = work.upper_bound(col);
      work.erase(col);
    }
  }

  std::size_t ncols_;
  std::vector<SparseRow<F>> rows_;
  std::map<std::size_t, std::size_t> pivot_of_;
};

template <class F>
SparseRow<F> dense_to_sparse(const std::vector<F>& v) {
  SparseRow<F> r;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!is_zero(v[i])) r.emplace_back(i, v[i]);
  return r;
}

template <class F>
std::vector<F> sparse_to_dense(const SparseRow<F>& r, std::size_t n) {
  std::vector<F> v(n, F(0));
  for (const auto& [c, x] : r) v[c] = x;
  return v;
}

/// Kernel of a sparse matrix given by its rows.
template <class F>
std::vector<SparseRow<F>> sparse_kernel(const std::vector<SparseRow<F>>& rows, std::size_t ncols) {
  SparseEchelon<F> e(ncols);
  for (const auto& r : rows) e.add(r);
  return e.kernel();
}

template <class F>
std::size_t sparse_rank(const std::vector<SparseRow<F>>& rows, std::size_t ncols) {
  SparseEchelon<F> e(ncols);
  for (const auto& r : rows) e.add(r);
  return e.rank();
}

}  // namespace hecat
