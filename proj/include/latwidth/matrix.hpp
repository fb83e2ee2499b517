#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "core.hpp"

namespace latwidth {

/// Dense row-major matrix. Small sizes only; d rarely exceeds a few dozen.
template <class T> class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  template <class U> static Matrix from(const Matrix<U> &other) {
    Matrix m(other.rows(), other.cols());
    for (std::size_t i = 0; i < other.rows(); ++i)
      for (std::size_t j = 0; j < other.cols(); ++j) m(i, j) = T(other(i, j));
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T &operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  void swap_columns(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  friend Matrix operator*(const Matrix &a, const Matrix &b) {
    require_same_dim(a.cols_, b.rows_);
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix &, const Matrix &) = default;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<std::int64_t>;
using BigMatrix = Matrix<BigInt>;
using RationalMatrix = Matrix<Rational>;

inline BigMatrix to_big(const IntMatrix &m) { return BigMatrix::from(m); }

inline IntMatrix to_int(const BigMatrix &m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = to_int64(m(i, j));
  return out;
}

/// Fraction-free (Bareiss) determinant.
inline BigInt determinant(BigMatrix a) {
  require(a.rows() == a.cols(), "determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && a(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

inline BigInt determinant(const IntMatrix &a) { return determinant(to_big(a)); }

/// Adjugate, so that a * adj(a) = det(a) * I. Built from cofactors; d is small.
inline BigMatrix adjugate(const BigMatrix &a) {
  require(a.rows() == a.cols(), "adjugate of a non-square matrix");
  const std::size_t n = a.rows();
  BigMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      BigMatrix minor(n - 1, n - 1);
      for (std::size_t r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, mc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(mr, mc++) = a(r, c);
        }
        ++mr;
      }
      BigInt cof = determinant(std::move(minor));
      // adj(a)(j, i) is the (i, j) cofactor
      adj(j, i) = ((i + j) % 2 == 0) ? cof : BigInt(-cof);
    }
  return adj;
}

inline RationalMatrix inverse(const BigMatrix &a) {
  BigInt det = determinant(a);
  require(det != 0, "matrix is singular");
  BigMatrix adj = adjugate(a);
  RationalMatrix inv(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) inv(i, j) = make_rational(adj(i, j), det);
  return inv;
}

inline BigInt floor_div(const BigInt &a, const BigInt &b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Column Hermite normal form of a full-row-rank integer matrix: returns the
/// d x d lower-triangular basis H of the column lattice with positive
/// diagonal and 0 <= H(i, j) < H(i, i) for j < i.
inline BigMatrix column_hnf(BigMatrix a) {
  const std::size_t n = a.rows(), m = a.cols();
  require(m >= n, "column_hnf needs at least as many columns as rows");
  for (std::size_t i = 0; i < n; ++i) {
    // gcd-combine columns i..m-1 on row i into column i
    for (std::size_t j = i + 1; j < m; ++j) {
      while (a(i, j) != 0) {
        BigInt q = floor_div(a(i, i), a(i, j));
        for (std::size_t r = i; r < n; ++r) a(r, i) -= q * a(r, j);
        a.swap_columns(i, j);
      }
    }
    require(a(i, i) != 0, "column_hnf: matrix does not have full row rank");
    if (a(i, i) < 0)
      for (std::size_t r = i; r < n; ++r) a(r, i) = -a(r, i);
    for (std::size_t j = 0; j < i; ++j) {
      BigInt q = floor_div(a(i, j), a(i, i));
      if (q != 0)
        for (std::size_t r = i; r < n; ++r) a(r, j) -= q * a(r, i);
    }
  }
  BigMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = a(i, j);
  return h;
}

/// Row Hermite normal form of a nonsingular square matrix: the canonical
/// representative of { U * a : U unimodular }.
inline BigMatrix row_hnf(const BigMatrix &a) {
  return column_hnf(a.transposed()).transposed();
}

inline std::vector<BigInt> multiply(const BigMatrix &a,
                                    std::span<const std::int64_t> x) {
  require_same_dim(a.cols(), x.size());
  std::vector<BigInt> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * x[j];
  return out;
}

} // namespace latwidth
