#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "insdel/gf.hpp"

namespace insdel {

/// Dense row-major matrix of field symbols. The field is supplied per operation.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Symbol& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Symbol operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Symbol> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Symbol> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  /// Columns [first, first + count).
  Matrix columns(std::size_t first, std::size_t count) const {
    Matrix out(rows_, count);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < count; ++c) out(r, c) = (*this)(r, first + c);
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Symbol> data_;
};

/// Row vector times matrix: x * M.
inline std::vector<Symbol> vec_mul(const Field& f, std::span<const Symbol> x, const Matrix& m) {
  if (x.size() != m.rows()) throw UsageError("vector length does not match matrix rows");
  std::vector<Symbol> out(m.cols(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (x[r] == 0) continue;
    const auto row = m.row(r);
    for (std::size_t c = 0; c < m.cols(); ++c) out[c] = f.add(out[c], f.mul(x[r], row[c]));
  }
  return out;
}

inline Matrix mat_mul(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw UsageError("matrix dimensions do not agree");
  Matrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const auto prod = vec_mul(f, a.row(r), b);
    for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) = prod[c];
  }
  return out;
}

/// In-place reduced row echelon form; returns the pivot column of each pivot row.
inline std::vector<std::size_t> row_reduce(const Field& f, Matrix& m, std::size_t col_limit) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < col_limit && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(p, k), m(r, k));
    const Symbol s = f.inv(m(r, c));
    for (std::size_t k = 0; k < m.cols(); ++k) m(r, k) = f.mul(m(r, k), s);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Symbol factor = m(i, c);
      for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = f.sub(m(i, k), f.mul(factor, m(r, k)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(const Field& f, Matrix m) { return row_reduce(f, m, m.cols()).size(); }

inline std::optional<Matrix> inverse(const Field& f, const Matrix& m) {
  if (m.rows() != m.cols()) throw UsageError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  if (row_reduce(f, aug, n).size() != n) return std::nullopt;
  return aug.columns(n, n);
}

/// One solution of A x = b (free variables set to zero), or nullopt if inconsistent.
inline std::optional<std::vector<Symbol>> solve(const Field& f, const Matrix& a, std::span<const Symbol> b) {
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  const auto pivots = row_reduce(f, aug, a.cols());
  for (std::size_t r = pivots.size(); r < aug.rows(); ++r)
    if (aug(r, a.cols()) != 0) return std::nullopt;
  std::vector<Symbol> x(a.cols(), 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
  return x;
}

}  // namespace insdel
