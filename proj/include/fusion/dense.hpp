#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fusion::dense {

/// Row-major square matrix over an arbitrary field-like scalar.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int n, const T& fill = T(0))
      : n_(n), data_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), fill) {}

  int size() const noexcept { return n_; }
  T& operator()(int i, int j) noexcept { return data_[static_cast<std::size_t>(i) * n_ + j]; }
  const T& operator()(int i, int j) const noexcept {
    return data_[static_cast<std::size_t>(i) * n_ + j];
  }

  static Matrix identity(int n) {
    Matrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    const int n = a.size();
    Matrix c(n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const T& aik = a(i, k);
        for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

 private:
  int n_ = 0;
  std::vector<T> data_;
};

class singular_matrix : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Magnitude used for pivot selection; overloaded by the complex type.
template <class T>
auto pivot_size(const T& x) {
  using std::abs;
  return abs(x);
}

/// Solves A x = b by Gaussian elimination with partial pivoting.
/// Exactly zero pivots are nudged to `tiny` so near-singular shifted systems
/// (inverse iteration) still return a usable direction.
template <class T, class Mag>
std::vector<T> solve(Matrix<T> a, std::vector<T> b, const Mag& tiny) {
  const int n = a.size();
  for (int col = 0; col < n; ++col) {
    int piv = col;
    auto best = pivot_size(a(col, col));
    for (int i = col + 1; i < n; ++i) {
      auto s = pivot_size(a(i, col));
      if (s > best) best = s, piv = i;
    }
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
      std::swap(b[col], b[piv]);
    }
    if (pivot_size(a(col, col)) <= tiny) a(col, col) = T(tiny);
    for (int i = col + 1; i < n; ++i) {
      if (pivot_size(a(i, col)) == 0) continue;
      T f = a(i, col) / a(col, col);
      for (int j = col; j < n; ++j) a(i, j) -= f * a(col, j);
      b[i] -= f * b[col];
    }
  }
  std::vector<T> x(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    T s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return x;
}

/// Gauss-Jordan inverse; throws singular_matrix when a pivot falls below `tol`.
template <class T, class Mag>
Matrix<T> inverse(Matrix<T> a, const Mag& tol) {
  const int n = a.size();
  Matrix<T> inv = Matrix<T>::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    auto best = pivot_size(a(col, col));
    for (int i = col + 1; i < n; ++i) {
      auto s = pivot_size(a(i, col));
      if (s > best) best = s, piv = i;
    }
    if (!(best > tol)) throw singular_matrix("matrix is singular at working precision");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a(col, j), a(piv, j));
        std::swap(inv(col, j), inv(piv, j));
      }
    T p = a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (int i = 0; i < n; ++i) {
      if (i == col) continue;
      T f = a(i, col);
      if (pivot_size(f) == 0) continue;
      for (int j = 0; j < n; ++j) {
        a(i, j) -= f * a(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

}  // namespace fusion::dense
