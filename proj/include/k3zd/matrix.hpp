#pragma once

// Small dense row-major matrices over exact rings.

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "k3zd/arith.hpp"
#include "k3zd/errors.hpp"

namespace k3zd {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw DomainError("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("matrix product: shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;
using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

RatMatrix to_rat(const IntMatrix& m);

/// Principal submatrix on the given indices (in the given order).
template <class T>
Matrix<T> principal_submatrix(const Matrix<T>& m, const std::vector<std::size_t>& idx) {
  Matrix<T> s(idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) s(i, j) = m(idx[i], idx[j]);
  return s;
}

/// P^T M P for the permutation matrix sending basis vector i to perm[i].
template <class T>
Matrix<T> permute(const Matrix<T>& m, const std::vector<std::size_t>& perm) {
  return principal_submatrix(m, perm);
}

/// Exact determinant by fraction-free elimination.
Int determinant(const IntMatrix& m);
Rat determinant(const RatMatrix& m);

/// Leading principal minors d_1, ..., d_n.
std::vector<Rat> leading_minors(const RatMatrix& m);

/// Solves A x = b exactly (A square, nonsingular). Partial pivoting picks the
/// entry of largest absolute value. Throws DegenerateError if A is singular.
RatVector solve(const RatMatrix& a, const RatVector& b);

/// Least common multiple of denominators, times the matrix: an integer matrix
/// proportional to m (by a positive factor).
IntMatrix clear_denominators(const RatMatrix& m);

std::string to_string(const IntMatrix& m);

}  // namespace k3zd
