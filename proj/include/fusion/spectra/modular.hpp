#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "fusion/ring.hpp"
#include "fusion/spectra/characters.hpp"
#include "fusion/spectra/precision.hpp"
#include "fusion/spectra/smith.hpp"

namespace fusion {

using Rational = boost::multiprecision::cpp_rational;

/// S built from the character table: column c is character sigma[c] scaled by
/// d_c / D, so S[0][c] = d_c / D.
struct SMatrix {
  std::vector<int> sigma;
  CMatrix S;
};

namespace detail {

inline Real character_norm(const std::vector<Complex<Real>>& row) {
  Real s = 0;
  for (const auto& z : row) s += norm(z);
  return s;
}

}  // namespace detail

/// All symmetric unitary S with S^2 = C (C[i][j] = N_{ij}^1) obtainable by
/// assigning characters to columns. Column c can only take a character whose
/// norm sum_i |chi(i)|^2 equals D^2 / d_c^2.
inline std::vector<SMatrix> s_matrices(const FusionRing& R, const CharacterTable& chars) {
  PrecisionGuard guard(chars.digits);
  const int r = R.rank();
  const Real tol = power_of_ten(-30);
  std::vector<Real> d(r);
  Real D2 = 0;
  for (int i = 0; i < r; ++i) d[i] = chars(0, i).re, D2 += d[i] * d[i];
  const Real D = sqrt(D2);
  std::vector<Real> norms(r);
  for (int j = 0; j < r; ++j) norms[j] = detail::character_norm(chars.chi[j]);

  auto entry = [&](const std::vector<int>& sigma, int a, int c) {
    const Complex<Real>& z = chars(sigma[c], a);
    return Complex<Real>(z.re * d[c] / D, z.im * d[c] / D);
  };

  std::vector<SMatrix> out;
  std::vector<int> sigma(r, -1);
  std::vector<char> used(r, 0);
  sigma[0] = 0, used[0] = 1;
  auto finish = [&] {
    SMatrix s{sigma, CMatrix(r)};
    for (int a = 0; a < r; ++a)
      for (int c = 0; c < r; ++c) s.S(a, c) = entry(sigma, a, c);
    const CMatrix sq = s.S * s.S;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        Complex<Real> u = 0;
        for (int k = 0; k < r; ++k) u += s.S(i, k) * conj(s.S(j, k));
        if (abs(u - Complex<Real>(i == j ? 1 : 0)) > tol) return;
        if (abs(sq(i, j) - Complex<Real>(R.at0(i, j, 0))) > tol) return;
      }
    out.push_back(std::move(s));
  };
  auto place = [&](auto&& self, int c) -> void {
    if (c == r) return finish();
    const Real want = D2 / (d[c] * d[c]);
    for (int j = 1; j < r; ++j) {
      if (used[j] || abs(norms[j] - want) > tol * want) continue;
      sigma[c] = j;
      bool sym = true;
      for (int a = 0; a < c && sym; ++a)
        if (abs(entry(sigma, a, c) - entry(sigma, c, a)) > tol) sym = false;
      if (sym) {
        used[j] = 1;
        self(self, c + 1);
        used[j] = 0;
      }
      sigma[c] = -1;
    }
  };
  place(place, 1);
  return out;
}

// --- Vafa system ------------------------------------------------------------

/// Integer rows of the log-linearized Vafa relations, one per (i,j,k,l),
/// over the unknowns t_2..t_r (t_1 = 0). Duplicates and zero rows removed.
inline BigMatrix vafa_system(const FusionRing& R) {
  const int r = R.rank();
  auto N = [&](int a, int b, int c) { return R.n(a, b, c); };
  auto bar = [&](int a) { return R.dual(a); };
  std::set<std::vector<long>> rows;
  std::vector<long> row(static_cast<std::size_t>(r));
  for (int i = 1; i <= r; ++i)
    for (int j = 1; j <= r; ++j)
      for (int k = 1; k <= r; ++k)
        for (int l = 1; l <= r; ++l) {
          std::fill(row.begin(), row.end(), 0);
          long a = 0;
          for (int n = 1; n <= r; ++n) a += static_cast<long>(N(i, j, bar(n))) * N(k, l, n);
          row[i - 1] += a, row[j - 1] += a, row[k - 1] += a, row[l - 1] += a;
          for (int n = 1; n <= r; ++n)
            row[n - 1] -= static_cast<long>(N(i, j, n)) * N(l, n, bar(k)) +
                          static_cast<long>(N(j, k, n)) * N(l, n, bar(i)) +
                          static_cast<long>(N(i, k, n)) * N(l, n, bar(j));
          std::vector<long> reduced(row.begin() + 1, row.end());
          if (std::any_of(reduced.begin(), reduced.end(), [](long x) { return x != 0; }))
            rows.insert(std::move(reduced));
        }
  BigMatrix out;
  for (const auto& v : rows) out.emplace_back(v.begin(), v.end());
  return out;
}

struct VafaSolution {
  /// Exponent vectors (t_1..t_r) with t_1 = 0, entries reduced into [0, 1).
  std::vector<std::vector<Rational>> candidates;
  /// Invariant factors > 1 of the system (the torsion part).
  std::vector<BigInt> torsion;
  /// Number of unconstrained directions; candidates then cover only the
  /// torsion representatives (free coordinates set to 0).
  int free_directions = 0;
  bool infinite_family() const { return free_directions > 0; }
  /// True when the torsion group exceeded the cap and nothing was listed.
  bool truncated = false;
};

/// Rational to working precision. Boost's own convert_to does not terminate
/// in reasonable time for fractions that are not dyadic.
inline Real to_real(const Rational& q) {
  return Real(boost::multiprecision::numerator(q)) / Real(boost::multiprecision::denominator(q));
}

inline Rational mod_one(const Rational& x) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  BigInt p = numerator(x), q = denominator(x);
  BigInt m = p % q;
  if (m < 0) m += q;
  return Rational(m, q);
}

/// Solutions t (mod 1) of the Vafa system: B t integral for the row lattice
/// B, solved through the Smith form U B W = D, t = W u with d_i u_i integral.
inline VafaSolution vafa_candidates(const FusionRing& R, std::size_t cap = std::size_t{1} << 16) {
  const int r = R.rank();
  const int n = r - 1;
  VafaSolution out;
  if (n == 0) {
    out.candidates.push_back({Rational(0)});
    return out;
  }
  const BigMatrix B = row_lattice_basis(vafa_system(R));
  std::vector<BigInt> diag(static_cast<std::size_t>(n), 0);
  BigMatrix W = big_identity(static_cast<std::size_t>(n));
  if (!B.empty()) {
    SmithForm f = smith_normal_form(B);
    W = std::move(f.W);
    const auto dd = f.diagonal();
    std::copy(dd.begin(), dd.end(), diag.begin());
  }
  BigInt total = 1;
  std::vector<int> cyclic;
  for (int i = 0; i < n; ++i) {
    if (diag[i] == 0) ++out.free_directions;
    else if (diag[i] > 1) {
      out.torsion.push_back(diag[i]);
      cyclic.push_back(i);
      total *= diag[i];
    }
  }
  if (total > cap) {
    out.truncated = true;
    return out;
  }
  std::vector<BigInt> k(cyclic.size(), 0);
  for (;;) {
    std::vector<Rational> u(static_cast<std::size_t>(n), Rational(0));
    for (std::size_t c = 0; c < cyclic.size(); ++c) u[cyclic[c]] = Rational(k[c], diag[cyclic[c]]);
    std::vector<Rational> t{Rational(0)};
    for (int i = 0; i < n; ++i) {
      Rational s = 0;
      for (int j = 0; j < n; ++j)
        if (W[i][j] != 0 && u[j] != 0) s += Rational(W[i][j]) * u[j];
      t.push_back(mod_one(s));
    }
    out.candidates.push_back(std::move(t));
    std::size_t c = 0;
    for (; c < cyclic.size(); ++c) {
      if (++k[c] < diag[cyclic[c]]) break;
      k[c] = 0;
    }
    if (c == cyclic.size()) break;
  }
  std::sort(out.candidates.begin(), out.candidates.end());
  return out;
}

// --- Modular data -----------------------------------------------------------

struct ModularDatum {
  std::vector<int> sigma;
  CMatrix S;
  std::vector<Rational> t;
  Complex<Real> lambda;
  Real residual;  // max |(ST)^3 - lambda S^2|
};

struct ModularSearch {
  std::vector<ModularDatum> data;
  std::size_t s_count = 0;
  std::size_t t_count = 0;
  bool infinite_family = false;
  bool truncated = false;
};

namespace detail {

template <class C>
dense::Matrix<C> times_diagonal(const dense::Matrix<C>& s, const std::vector<C>& theta) {
  dense::Matrix<C> out = s;
  for (int i = 0; i < s.size(); ++i)
    for (int j = 0; j < s.size(); ++j) out(i, j) = s(i, j) * theta[j];
  return out;
}

}  // namespace detail

/// Every (S, T) with (ST)^3 = lambda S^2, S from s_matrices and T from the
/// Vafa candidates. A double-precision screen discards most pairs before the
/// working-precision check at 10^-30.
inline ModularSearch modular_data(const FusionRing& R, const CharacterTable& chars) {
  PrecisionGuard guard(chars.digits);
  const int r = R.rank();
  const Real tol = power_of_ten(-30);
  ModularSearch out;
  const auto ss = s_matrices(R, chars);
  const auto vafa = vafa_candidates(R);
  out.s_count = ss.size();
  out.t_count = vafa.candidates.size();
  out.infinite_family = vafa.infinite_family();
  out.truncated = vafa.truncated;

  using CD = std::complex<double>;
  for (const SMatrix& s : ss) {
    dense::Matrix<CD> sd(r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) sd(i, j) = CD(s.S(i, j).re.convert_to<double>(), s.S(i, j).im.convert_to<double>());
    const CMatrix s2 = s.S * s.S;
    int pi = 0, pj = 0;
    for (int k = 0; k < r * r; ++k)
      if (abs(s2(k / r, k % r)) > Real(0.5)) {
        pi = k / r, pj = k % r;
        break;
      }
    for (const auto& t : vafa.candidates) {
      std::vector<CD> th(r);
      for (int i = 0; i < r; ++i) th[i] = std::polar(1.0, 2 * M_PI * t[i].convert_to<double>());
      const auto st = detail::times_diagonal(sd, th);
      const auto cube = st * st * st;
      const auto sq = sd * sd;
      const CD lam = cube(pi, pj) / sq(pi, pj);
      bool pass = true;
      for (int i = 0; i < r && pass; ++i)
        for (int j = 0; j < r; ++j)
          if (std::abs(cube(i, j) - lam * sq(i, j)) > 1e-8) {
            pass = false;
            break;
          }
      if (!pass) continue;

      std::vector<Complex<Real>> theta(r);
      for (int i = 0; i < r; ++i) theta[i] = unit_phase(to_real(t[i]));
      const CMatrix sth = detail::times_diagonal(s.S, theta);
      const CMatrix cubeh = sth * sth * sth;
      const Complex<Real> lambda = cubeh(pi, pj) / s2(pi, pj);
      Real res = 0;
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
          const Real e = abs(cubeh(i, j) - lambda * s2(i, j));
          if (e > res) res = e;
        }
      if (res < tol) out.data.push_back({s.sigma, s.S, t, lambda, res});
    }
  }
  return out;
}

inline nlohmann::json modular_datum_to_json(const ModularDatum& m, int digits) {
  const int r = m.S.size();
  nlohmann::json S = nlohmann::json::array();
  for (int i = 0; i < r; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < r; ++j) row.push_back({decimal(m.S(i, j).re, digits), decimal(m.S(i, j).im, digits)});
    S.push_back(std::move(row));
  }
  nlohmann::json t = nlohmann::json::array();
  for (const auto& q : m.t) t.push_back(q.str());
  return {{"S", std::move(S)},
          {"t", std::move(t)},
          {"lambda", {decimal(m.lambda.re, digits), decimal(m.lambda.im, digits)}}};
}

}  // namespace fusion
