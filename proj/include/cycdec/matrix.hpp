#pragma once

// Dense matrices over GF(2^k) and the elimination routines the determinant
// identity needs. Pivoting is first-nonzero in column order: over a finite
// field there is no growth to control. The 0x0 matrix has determinant 1.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cycdec/errors.hpp"
#include "cycdec/field.hpp"

namespace cycdec {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = kOne;
    return m;
  }

  static Matrix filled(std::size_t rows, std::size_t cols, Elem v) {
    Matrix m(rows, cols);
    std::fill(m.data_.begin(), m.data_.end(), v);
    return m;
  }

  /// Row-major construction from raw bit patterns; handy in tests.
  static Matrix from_bits(std::size_t rows, std::size_t cols, std::span<const std::uint64_t> bits) {
    if (bits.size() != rows * cols) throw InputError("matrix literal has wrong number of entries");
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < bits.size(); ++i) m.data_[i] = Elem{bits[i]};
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool square() const { return rows_ == cols_; }

  Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  [[nodiscard]] std::span<const Elem> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix sum: shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

inline Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) t(c, r) = a(r, c);
  return t;
}

inline Matrix multiply(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw InputError("matrix product: inner dimensions differ");
  Matrix p(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Elem s = a(i, k);
      if (s.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) p(i, j) += f.mul(s, b(k, j));
    }
  return p;
}

/// Entrywise square A^{•2}.
inline Matrix entrywise_square(const Field& f, Matrix a) {
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (Elem& e : a.row(r)) e = f.square(e);
  return a;
}

/// Principal submatrix on the given (sorted or not) index set.
inline Matrix principal_minor(const Matrix& a, std::span<const std::size_t> idx) {
  Matrix m(idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = a(idx[i], idx[j]);
  return m;
}

inline Matrix diagonal(std::span<const Elem> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

namespace detail {

// Reduces a[r..][col..] below the pivot row; returns false if column has no pivot.
inline bool eliminate_column(const Field& f, Matrix& a, std::size_t pivot_row, std::size_t col,
                             Elem& pivot_out) {
  std::size_t p = pivot_row;
  while (p < a.rows() && a(p, col).is_zero()) ++p;
  if (p == a.rows()) return false;
  if (p != pivot_row) {
    auto x = a.row(p);
    auto y = a.row(pivot_row);
    std::swap_ranges(x.begin(), x.end(), y.begin());
  }
  const Elem pivot = a(pivot_row, col);
  const Elem pivot_inv = f.inv(pivot);
  const auto prow = a.row(pivot_row);
  for (std::size_t r = pivot_row + 1; r < a.rows(); ++r) {
    const Elem lead = a(r, col);
    if (lead.is_zero()) continue;
    const Elem factor = f.mul(lead, pivot_inv);
    auto rr = a.row(r);
    rr[col] = kZero;
    for (std::size_t c = col + 1; c < a.cols(); ++c) {
      if (!prow[c].is_zero()) rr[c] += f.mul(factor, prow[c]);
    }
  }
  pivot_out = pivot;
  return true;
}

}  // namespace detail

/// Determinant by Gaussian elimination. No signs: -1 = 1 in characteristic 2.
inline Elem det(const Field& f, Matrix a) {
  if (!a.square()) throw InputError("determinant of a non-square matrix");
  Elem d = kOne;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    Elem pivot;
    if (!detail::eliminate_column(f, a, c, c, pivot)) return kZero;
    d = f.mul(d, pivot);
  }
  return d;
}

inline std::size_t rank(const Field& f, Matrix a) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    Elem pivot;
    if (detail::eliminate_column(f, a, r, c, pivot)) ++r;
  }
  return r;
}

inline bool is_symmetric(const Matrix& a) { return a.square() && a == transpose(a); }

inline bool has_zero_diagonal(const Matrix& a) {
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i)
    if (!a(i, i).is_zero()) return false;
  return true;
}

/// A·Aᵀ = I.
inline bool is_unitary(const Field& f, const Matrix& a) {
  return a.square() && multiply(f, a, transpose(a)) == Matrix::identity(a.rows());
}

}  // namespace cycdec
