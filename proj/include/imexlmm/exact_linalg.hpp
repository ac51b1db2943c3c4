#pragma once

#include "imexlmm/errors.hpp"
#include "imexlmm/rational.hpp"

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace imexlmm {

/// Row-major dense matrix over an arbitrary field type. Small sizes only;
/// used for the exact (rational / quadratic-field) linear algebra.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  DenseMatrix transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("DenseMatrix: shape mismatch in product");
    DenseMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t l = 0; l < a.cols_; ++l) {
        if (a(i, l) == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, l) * b(l, j);
      }
    return c;
  }

  friend std::vector<T> operator*(const DenseMatrix& a, const std::vector<T>& x) {
    if (a.cols_ != x.size()) throw std::invalid_argument("DenseMatrix: shape mismatch in matvec");
    std::vector<T> y(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
    return y;
  }

  friend DenseMatrix operator-(DenseMatrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

namespace detail {

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const Rational& x) { return std::abs(to_double(x)); }
template <class T>
double magnitude(const T& x) {
  return std::abs(to_double(x));
}

}  // namespace detail

/// Gaussian elimination with magnitude pivoting; exact for exact field types.
template <class T>
std::vector<T> solve(DenseMatrix<T> m, std::vector<T> b) {
  const std::size_t n = m.rows();
  if (m.cols() != n || b.size() != n) throw std::invalid_argument("solve: shape mismatch");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = n;
    double best = -1.0;
    for (std::size_t r = col; r < n; ++r) {
      if (m(r, col) == T(0)) continue;
      const double mag = detail::magnitude(m(r, col));
      if (mag > best) {
        best = mag;
        piv = r;
      }
    }
    if (piv == n) throw std::domain_error("solve: singular matrix");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(col, j), m(piv, j));
      std::swap(b[col], b[piv]);
    }
    const T inv = T(1) / m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m(r, col) == T(0)) continue;
      const T factor = m(r, col) * inv;
      for (std::size_t j = col; j < n; ++j) m(r, j) -= factor * m(col, j);
      b[r] -= factor * b[col];
    }
  }
  std::vector<T> x(n, T(0));
  for (std::size_t i = n; i-- > 0;) {
    T acc = b[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= m(i, j) * x[j];
    x[i] = acc / m(i, i);
  }
  return x;
}

template <class T>
DenseMatrix<T> inverse(const DenseMatrix<T>& m) {
  const std::size_t n = m.rows();
  DenseMatrix<T> inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<T> e(n, T(0));
    e[j] = T(1);
    const auto col = solve(m, std::move(e));
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  return inv;
}

/// Transposed Vandermonde matrix: row m holds nodes[i]^m.
template <class T>
DenseMatrix<T> transposed_vandermonde(const std::vector<T>& nodes) {
  const std::size_t n = nodes.size();
  DenseMatrix<T> w(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    T power(1);
    for (std::size_t m = 0; m < n; ++m) {
      w(m, i) = power;
      power *= nodes[i];
    }
  }
  return w;
}

}  // namespace imexlmm
