#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "fusion/dense.hpp"
#include "fusion/ring.hpp"

namespace fusion {

template <class Real>
struct FpDimensions {
  std::vector<Real> d;  // d[a-1] for basis element a
  Real global;          // sum of squares
};

/// Frobenius-Perron dimensions: the positive common eigenvector of the fusion
/// matrices, scaled so the unit has dimension 1. It is the Perron vector of
/// sum_a [N_a], which is entrywise positive for any fusion ring.
///
/// A double-precision power iteration supplies the start; shifted inverse
/// iteration then polishes in `Real` until the update stalls at `tol`
/// (defaults to a few ulps of Real).
template <class Real = double>
FpDimensions<Real> fp_dimensions(const FusionRing& ring, Real tol = Real(0)) {
  using std::abs;
  const int r = ring.rank();
  if (tol == Real(0)) tol = Real(std::numeric_limits<double>::epsilon());

  std::vector<double> sum(static_cast<std::size_t>(r) * r, 0.0);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int c = 0; c < r; ++c) sum[b * r + c] += ring.at0(a, b, c);

  std::vector<double> v(r, 1.0), w(r);
  double rho = 0;
  for (int it = 0; it < 5000; ++it) {
    for (int b = 0; b < r; ++b) {
      double s = 0;
      for (int c = 0; c < r; ++c) s += sum[b * r + c] * v[c];
      w[b] = s;
    }
    const double next = w[0] / v[0], w0 = w[0];
    double delta = 0;
    for (int b = 0; b < r; ++b) {
      w[b] /= w0;
      delta = std::max(delta, std::abs(w[b] - v[b]));
    }
    v.swap(w);
    rho = next;
    if (delta < 1e-15) break;
  }

  dense::Matrix<Real> shifted(r);
  for (int b = 0; b < r; ++b)
    for (int c = 0; c < r; ++c) shifted(b, c) = Real(sum[b * r + c]);
  std::vector<Real> x(r);
  for (int b = 0; b < r; ++b) x[b] = Real(v[b]);
  // Shift slightly off the eigenvalue so the system stays numerically regular.
  const Real shift = Real(rho) * (Real(1) + Real(1e-12));
  for (int b = 0; b < r; ++b) shifted(b, b) -= shift;
  const Real tiny = tol * tol;
  for (int it = 0; it < 200; ++it) {
    std::vector<Real> y = dense::solve(shifted, x, tiny);
    const Real scale = y[0];
    Real delta = 0;
    for (int b = 0; b < r; ++b) {
      y[b] /= scale;
      Real diff = abs(y[b] - x[b]);
      if (diff > delta) delta = diff;
    }
    x.swap(y);
    if (delta <= tol) break;
  }

  FpDimensions<Real> out{x, Real(0)};
  for (const Real& da : out.d) out.global += da * da;
  return out;
}

/// Element-wise Frobenius-Perron dimension as double, for ordering.
inline std::vector<double> fp_dimensions_double(const FusionRing& ring) {
  return fp_dimensions<double>(ring).d;
}

}  // namespace fusion
