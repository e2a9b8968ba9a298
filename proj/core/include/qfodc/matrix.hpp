#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qfodc/error.hpp"

namespace qfodc {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const std::vector<T>& data() const { return a_; }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw Error(ErrorKind::InvalidArgument, "matrix shape mismatch");
    Matrix r(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const T& xv = x(i, k);
        if (xv.is_zero()) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) {
          const T& yv = y(k, j);
          if (yv.is_zero()) continue;
          r(i, j) += xv * yv;
        }
      }
    return r;
  }
  friend Matrix operator+(Matrix x, const Matrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw Error(ErrorKind::InvalidArgument, "matrix shape mismatch");
    for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] += y.a_[i];
    return x;
  }
  friend Matrix operator-(Matrix x, const Matrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw Error(ErrorKind::InvalidArgument, "matrix shape mismatch");
    for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] -= y.a_[i];
    return x;
  }
  friend Matrix operator*(const T& s, Matrix x) {
    for (auto& v : x.a_) v = s * v;
    return x;
  }
  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }
  friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> a_;
};

// Fraction-free Gauss-Jordan on [A | I]. Returns (d, X) with X = d * A^-1 and
// d = +-det(A); every division is exact, so Laurent inputs stay Laurent.
template <class T>
std::pair<T, Matrix<T>> scaled_inverse(const Matrix<T>& A) {
  const std::size_t n = A.rows();
  if (A.cols() != n) throw Error(ErrorKind::InvalidArgument, "scaled_inverse needs a square matrix");
  Matrix<T> M(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) M(i, j) = A(i, j);
    M(i, n + i) = T(1);
  }
  T prev(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && M(piv, k).is_zero()) ++piv;
    if (piv == n) throw Error(ErrorKind::DivisionByZero, "singular matrix");
    if (piv != k)
      for (std::size_t j = 0; j < 2 * n; ++j) std::swap(M(piv, j), M(k, j));
    const T pk = M(k, k);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const T f = M(i, k);
      for (std::size_t j = 0; j < 2 * n; ++j) {
        if (j == k) continue;
        T v = pk * M(i, j);
        if (!f.is_zero() && !M(k, j).is_zero()) v -= f * M(k, j);
        M(i, j) = prev.is_one() ? v : v / prev;
      }
      M(i, k) = T();
    }
    prev = pk;
  }
  Matrix<T> X(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) X(i, j) = M(i, n + j);
  return {prev, std::move(X)};
}

template <class T>
Matrix<T> inverse(const Matrix<T>& A) {
  if (A.rows() == 0) return A;
  auto [d, X] = scaled_inverse(A);
  for (std::size_t i = 0; i < X.rows(); ++i)
    for (std::size_t j = 0; j < X.cols(); ++j) X(i, j) = X(i, j) / d;
  return X;
}

// Exact rank by fraction-free (Bareiss) elimination.
template <class T>
std::size_t bareiss_rank(Matrix<T> M) {
  std::size_t r = 0;
  T prev(1);
  for (std::size_t c = 0; c < M.cols() && r < M.rows(); ++c) {
    std::size_t piv = r;
    while (piv < M.rows() && M(piv, c).is_zero()) ++piv;
    if (piv == M.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < M.cols(); ++j) std::swap(M(piv, j), M(r, j));
    const T pk = M(r, c);
    for (std::size_t i = r + 1; i < M.rows(); ++i) {
      const T f = M(i, c);
      for (std::size_t j = c + 1; j < M.cols(); ++j) {
        T v = pk * M(i, j);
        if (!f.is_zero() && !M(r, j).is_zero()) v -= f * M(r, j);
        M(i, j) = prev.is_one() ? v : v / prev;
      }
      M(i, c) = T();
    }
    prev = pk;
    ++r;
  }
  return r;
}

}  // namespace qfodc
