#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fusion {

using BigInt = boost::multiprecision::cpp_int;
/// Row-major, rows x cols (not necessarily square).
using BigMatrix = std::vector<std::vector<BigInt>>;

inline BigMatrix big_identity(std::size_t n) {
  BigMatrix m(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline BigMatrix big_multiply(const BigMatrix& a, const BigMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  BigMatrix c(n, std::vector<BigInt>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

/// Determinant by fraction-free (Bareiss) elimination.
inline BigInt big_determinant(BigMatrix a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    if (k + 1 == n) break;
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

/// U * A * W = D with U, W unimodular and D diagonal, d_i | d_{i+1}, d_i >= 0.
struct SmithForm {
  BigMatrix U, D, W;

  std::vector<BigInt> diagonal() const {
    std::vector<BigInt> d;
    for (std::size_t i = 0; i < D.size() && i < (D.empty() ? 0 : D[0].size()); ++i) d.push_back(D[i][i]);
    return d;
  }
};

inline SmithForm smith_normal_form(const BigMatrix& A) {
  const std::size_t m = A.size(), n = A.empty() ? 0 : A[0].size();
  SmithForm f{big_identity(m), A, big_identity(n)};
  BigMatrix& D = f.D;

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(D[i], D[j]);
    std::swap(f.U[i], f.U[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (auto& row : D) std::swap(row[i], row[j]);
    for (auto& row : f.W) std::swap(row[i], row[j]);
  };
  // row_i += q * row_j
  auto add_row = [&](std::size_t i, std::size_t j, const BigInt& q) {
    for (std::size_t c = 0; c < n; ++c) D[i][c] += q * D[j][c];
    for (std::size_t c = 0; c < m; ++c) f.U[i][c] += q * f.U[j][c];
  };
  auto add_col = [&](std::size_t i, std::size_t j, const BigInt& q) {
    for (std::size_t r = 0; r < m; ++r) D[r][i] += q * D[r][j];
    for (std::size_t r = 0; r < n; ++r) f.W[r][i] += q * f.W[r][j];
  };

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      std::size_t pi = m, pj = n;
      BigInt best = 0;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (D[i][j] != 0 && (best == 0 || abs(D[i][j]) < best)) best = abs(D[i][j]), pi = i, pj = j;
      if (pi == m) return f;  // remaining block is zero
      if (pi != t) swap_rows(t, pi);
      if (pj != t) swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D[i][t] == 0) continue;
        add_row(i, t, -(D[i][t] / D[t][t]));
        if (D[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D[t][j] == 0) continue;
        add_col(j, t, -(D[t][j] / D[t][t]));
        if (D[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D[i][j] % D[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      add_row(t, bad, 1);
    }
    if (D[t][t] < 0) {
      for (auto& x : D[t]) x = -x;
      for (auto& x : f.U[t]) x = -x;
    }
  }
  return f;
}

/// A basis (in echelon form) of the Z-span of the rows of A: same row
/// lattice, at most min(rows, cols) rows.
inline BigMatrix row_lattice_basis(BigMatrix A) {
  const std::size_t n = A.empty() ? 0 : A[0].size();
  std::size_t top = 0;
  for (std::size_t col = 0; col < n && top < A.size(); ++col) {
    for (;;) {
      std::size_t piv = A.size();
      for (std::size_t i = top; i < A.size(); ++i)
        if (A[i][col] != 0 && (piv == A.size() || abs(A[i][col]) < abs(A[piv][col]))) piv = i;
      if (piv == A.size()) break;
      std::swap(A[top], A[piv]);
      bool clean = true;
      for (std::size_t i = top + 1; i < A.size(); ++i) {
        if (A[i][col] == 0) continue;
        const BigInt q = A[i][col] / A[top][col];
        for (std::size_t c = col; c < n; ++c) A[i][c] -= q * A[top][c];
        if (A[i][col] != 0) clean = false;
      }
      if (clean) {
        ++top;
        break;
      }
    }
  }
  A.resize(top);
  return A;
}

}  // namespace fusion
