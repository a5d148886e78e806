#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

#include "fusion/dense.hpp"
#include "fusion/ring.hpp"
#include "fusion/spectra/precision.hpp"

namespace fusion {

using CMatrix = dense::Matrix<Complex<Real>>;

/// Characters of a commutative fusion ring: chi[j][i] is character j at basis
/// element i (both 0-based). Row 0 is the Frobenius-Perron character; every
/// row takes the value 1 at the unit.
struct CharacterTable {
  int rank = 0;
  unsigned digits = default_digits;
  std::uint64_t seed = 0;
  int draws = 0;   // random combinations tried, including the successful one
  Real residual;   // largest off-diagonal entry of V^-1 N_k V
  std::vector<std::vector<Complex<Real>>> chi;

  const Complex<Real>& operator()(int j, int i) const { return chi[j][i]; }

  /// Columns are the simultaneous eigenvectors (the rows of chi).
  CMatrix eigenvectors() const {
    CMatrix v(rank);
    for (int j = 0; j < rank; ++j)
      for (int i = 0; i < rank; ++i) v(i, j) = chi[j][i];
    return v;
  }
};

struct DiagonalizationCheck {
  bool ok = false;
  Real residual;
};

inline CMatrix complex_fusion_matrix(const FusionRing& R, int a) {
  const int r = R.rank();
  CMatrix m(r);
  for (int b = 0; b < r; ++b)
    for (int c = 0; c < r; ++c) m(b, c) = Complex<Real>(R.at0(a - 1, b, c));
  return m;
}

/// Largest off-diagonal magnitude of V^-1 [N_k] V over all k; ok iff below tol.
/// Throws dense::singular_matrix when V is singular at working precision.
inline DiagonalizationCheck verify_diagonalization(const FusionRing& R, const CMatrix& V, const Real& tol) {
  const int r = R.rank();
  const CMatrix inv = dense::inverse(V, power_of_ten(-static_cast<int>(Real::default_precision()) / 2));
  DiagonalizationCheck out{true, Real(0)};
  for (int k = 1; k <= r; ++k) {
    const CMatrix d = inv * (complex_fusion_matrix(R, k) * V);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        if (i != j) {
          const Real e = abs(d(i, j));
          if (e > out.residual) out.residual = e;
        }
  }
  out.ok = out.residual < tol;
  return out;
}

namespace detail {

// Refines an approximate eigenpair of M by inverse iteration with a
// Rayleigh-quotient shift. The vector is scaled to 1 at the unit.
inline std::vector<Complex<Real>> refine_eigenvector(const CMatrix& M, std::vector<Complex<Real>> x,
                                                     Complex<Real> mu, const Real& eps) {
  const int r = M.size();
  const Real tiny = eps * eps;
  for (int it = 0; it < 60; ++it) {
    CMatrix shifted = M;
    for (int i = 0; i < r; ++i) shifted(i, i) -= mu;
    std::vector<Complex<Real>> y = dense::solve(shifted, x, tiny);
    const Complex<Real> scale = y[0];
    Real delta = 0;
    for (int i = 0; i < r; ++i) {
      y[i] /= scale;
      const Real e = abs(y[i] - x[i]);
      if (e > delta) delta = e;
    }
    x.swap(y);
    Complex<Real> num = 0, den = 0;
    for (int i = 0; i < r; ++i) {
      Complex<Real> mx = 0;
      for (int j = 0; j < r; ++j) mx += M(i, j) * x[j];
      num += conj(x[i]) * mx;
      den += conj(x[i]) * x[i];
    }
    mu = num / den;
    if (delta < eps) break;
  }
  return x;
}

// Lexicographic on (re, im) per column, treating differences below tol as ties.
inline bool row_less(const std::vector<Complex<Real>>& a, const std::vector<Complex<Real>>& b, const Real& tol) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (abs(a[i].re - b[i].re) > tol) return a[i].re < b[i].re;
    if (abs(a[i].im - b[i].im) > tol) return a[i].im < b[i].im;
  }
  return false;
}

}  // namespace detail

/// Character table by diagonalizing M = sum_k c_k [N_k] for random c_k in
/// [1, 2]. A draw whose eigenvalues are not clearly separated, or whose
/// eigenvectors fail to diagonalize every [N_k] to 10^(2-digits), is
/// discarded and redrawn.
inline CharacterTable character_table(const FusionRing& R, unsigned digits = default_digits,
                                      std::uint64_t seed = 0, int max_draws = 32) {
  if (!is_commutative(R)) throw std::domain_error("character table requires a commutative ring");
  PrecisionGuard guard(digits);
  const int r = R.rank();
  const Real eps = power_of_ten(-static_cast<int>(digits) + 3);
  const Real verify_tol = power_of_ten(2 - static_cast<int>(digits));
  const Real order_tol = power_of_ten(-40);

  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> coef(1.0, 2.0);
  for (int draw = 1; draw <= max_draws; ++draw) {
    std::vector<double> c(r);
    for (double& ck : c) ck = coef(gen);

    Eigen::MatrixXd md = Eigen::MatrixXd::Zero(r, r);
    CMatrix mh(r);
    for (int k = 0; k < r; ++k)
      for (int b = 0; b < r; ++b)
        for (int cc = 0; cc < r; ++cc)
          if (const int n = R.at0(k, b, cc)) {
            md(b, cc) += c[k] * n;
            mh(b, cc) += Complex<Real>(Real(c[k]) * n);
          }
    Eigen::EigenSolver<Eigen::MatrixXd> es(md);
    if (es.info() != Eigen::Success) continue;
    const auto lam = es.eigenvalues();
    double scale = 1;
    for (int i = 0; i < r; ++i) scale = std::max(scale, std::abs(lam(i)));
    bool separated = true;
    for (int i = 0; i < r && separated; ++i)
      for (int j = i + 1; j < r; ++j)
        if (std::abs(lam(i) - lam(j)) < 1e-7 * scale) {
          separated = false;
          break;
        }
    if (!separated) continue;

    const auto vecs = es.eigenvectors();
    std::vector<std::vector<Complex<Real>>> rows;
    bool bad_unit = false;
    for (int j = 0; j < r; ++j) {
      const std::complex<double> v0 = vecs(0, j);
      if (std::abs(v0) < 1e-12) {
        bad_unit = true;
        break;
      }
      std::vector<Complex<Real>> x(r);
      for (int i = 0; i < r; ++i) {
        const std::complex<double> v = vecs(i, j) / v0;
        x[i] = Complex<Real>(Real(v.real()), Real(v.imag()));
      }
      rows.push_back(detail::refine_eigenvector(mh, std::move(x),
                                                Complex<Real>(Real(lam(j).real()), Real(lam(j).imag())), eps));
    }
    if (bad_unit) continue;

    // FP character: the unique row maximizing the real part of its sum.
    std::size_t fp = 0;
    Real best = 0;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      Real s = 0;
      for (const auto& z : rows[j]) s += z.re;
      if (j == 0 || s > best) best = s, fp = j;
    }
    std::swap(rows[0], rows[fp]);
    std::sort(rows.begin() + 1, rows.end(),
              [&](const auto& a, const auto& b) { return detail::row_less(a, b, order_tol); });

    CharacterTable t;
    t.rank = r;
    t.digits = digits;
    t.seed = seed;
    t.draws = draw;
    t.chi = std::move(rows);
    DiagonalizationCheck check;
    try {
      check = verify_diagonalization(R, t.eigenvectors(), verify_tol);
    } catch (const dense::singular_matrix&) {
      continue;
    }
    if (!check.ok) continue;
    t.residual = check.residual;
    return t;
  }
  throw std::runtime_error("character table: no random combination diagonalized all fusion matrices in " +
                           std::to_string(max_draws) + " draws");
}

}  // namespace fusion
