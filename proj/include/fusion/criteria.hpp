#pragma once

#include <array>
#include <atomic>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "fusion/ring.hpp"
#include "fusion/spectra/characters.hpp"
#include "fusion/spectra/precision.hpp"

namespace fusion {

enum class Criterion { zero_spectrum, schur_product };

inline const char* criterion_name(Criterion c) {
  return c == Criterion::zero_spectrum ? "ZSC" : "CSPC";
}

struct ObstructionWitness {
  Criterion criterion = Criterion::zero_spectrum;
  std::vector<int> indices;  // 1-based: i1..i9, or character rows j1, j2, j3
  std::string value;         // the vanishing sum, or the negative Schur sum
};

// --- Zero spectrum ----------------------------------------------------------

namespace detail {

class ZeroSpectrum {
 public:
  explicit ZeroSpectrum(const FusionRing& R) : R_(R), r_(R.rank()) {}

  int N(int a, int b, int c) const { return R_.n(a, b, c); }
  int bar(int a) const { return R_.dual(a); }
  // sum_k N_{ab}^k N_{cd}^k
  int pair(int a, int b, int c, int d) const {
    int s = 0;
    for (int k = 1; k <= r_; ++k) s += N(a, b, k) * N(c, d, k);
    return s;
  }

  bool first_or(int i1, int i2, int i3, int i4, int i5, int i6) const {
    return pair(i5, i4, i3, bar(i1)) == 1 || pair(i2, bar(i4), i3, bar(i6)) == 1 ||
           pair(bar(i5), i2, i6, bar(i1)) == 1;
  }
  bool second_or(int i1, int i2, int i3, int i7, int i8, int i9) const {
    return pair(i2, i7, i3, bar(i9)) == 1 || pair(i8, bar(i7), i3, bar(i1)) == 1 ||
           pair(bar(i2), i8, i1, bar(i9)) == 1;
  }
  int triple_sum(int i4, int i5, int i6, int i7, int i8, int i9) const {
    int s = 0;
    for (int k = 1; k <= r_; ++k) s += N(i4, i7, k) * N(bar(i5), i8, k) * N(i6, bar(i9), k);
    return s;
  }

  /// Every condition of the criterion, evaluated directly.
  bool holds(const std::array<int, 9>& i) const {
    const auto [i1, i2, i3, i4, i5, i6, i7, i8, i9] = i;
    return N(i4, i1, i6) != 0 && N(i5, i4, i2) != 0 && N(i5, i6, i3) != 0 && N(i7, i9, i1) != 0 &&
           N(i2, i7, i8) != 0 && N(i8, i9, i3) != 0 && triple_sum(i4, i5, i6, i7, i8, i9) == 0 &&
           N(i2, i1, i3) == 1 && first_or(i1, i2, i3, i4, i5, i6) && second_or(i1, i2, i3, i7, i8, i9);
  }

  /// First witness with the given i1, in lexicographic order of (i2..i9).
  std::optional<std::array<int, 9>> scan(int i1) const {
    const int r = r_;
    for (int i2 = 1; i2 <= r; ++i2)
      for (int i3 = 1; i3 <= r; ++i3) {
        if (N(i2, i1, i3) != 1) continue;
        for (int i4 = 1; i4 <= r; ++i4)
          for (int i5 = 1; i5 <= r; ++i5) {
            if (N(i5, i4, i2) == 0) continue;
            for (int i6 = 1; i6 <= r; ++i6) {
              if (N(i4, i1, i6) == 0 || N(i5, i6, i3) == 0) continue;
              if (!first_or(i1, i2, i3, i4, i5, i6)) continue;
              for (int i7 = 1; i7 <= r; ++i7)
                for (int i8 = 1; i8 <= r; ++i8) {
                  if (N(i2, i7, i8) == 0) continue;
                  for (int i9 = 1; i9 <= r; ++i9) {
                    if (N(i7, i9, i1) == 0 || N(i8, i9, i3) == 0) continue;
                    if (!second_or(i1, i2, i3, i7, i8, i9)) continue;
                    if (triple_sum(i4, i5, i6, i7, i8, i9) != 0) continue;
                    return std::array<int, 9>{i1, i2, i3, i4, i5, i6, i7, i8, i9};
                  }
                }
            }
          }
      }
    return std::nullopt;
  }

 private:
  const FusionRing& R_;
  int r_;
};

}  // namespace detail

/// Zero-spectrum obstruction: the lexicographically first index 9-tuple
/// satisfying every condition, or none. The scan over i1 may be split across
/// threads; the reported witness does not depend on the split.
inline std::optional<ObstructionWitness> zero_spectrum(const FusionRing& R, int threads = 1) {
  const detail::ZeroSpectrum z(R);
  const int r = R.rank();
  std::vector<std::optional<std::array<int, 9>>> found(static_cast<std::size_t>(r));
  if (threads <= 1) {
    for (int i1 = 1; i1 <= r; ++i1)
      if ((found[i1 - 1] = z.scan(i1))) break;
  } else {
    std::atomic<int> next{1};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (int i1; (i1 = next.fetch_add(1)) <= r;) found[i1 - 1] = z.scan(i1);
      });
    for (auto& t : pool) t.join();
  }
  for (const auto& w : found)
    if (w) return ObstructionWitness{Criterion::zero_spectrum, std::vector<int>(w->begin(), w->end()), "0"};
  return std::nullopt;
}

/// Straight 9-fold loop with no pruning; for cross-checking the fast scan.
inline std::optional<ObstructionWitness> zero_spectrum_reference(const FusionRing& R) {
  const detail::ZeroSpectrum z(R);
  const int r = R.rank();
  std::array<int, 9> i{};
  i.fill(1);
  for (;;) {
    if (z.holds(i)) return ObstructionWitness{Criterion::zero_spectrum, std::vector<int>(i.begin(), i.end()), "0"};
    int k = 8;
    while (k >= 0 && i[k] == r) i[k--] = 1;
    if (k < 0) return std::nullopt;
    ++i[k];
  }
}

// --- Commutative Schur product ----------------------------------------------

/// sum_i chi_{j1}(i) chi_{j2}(i) chi_{j3}(i) / d_i with 0-based rows.
inline Complex<Real> schur_sum(const CharacterTable& chars, int j1, int j2, int j3) {
  Complex<Real> s = 0;
  for (int i = 0; i < chars.rank; ++i) {
    const Complex<Real> p = chars(j1, i) * chars(j2, i) * chars(j3, i);
    const Real d = chars(0, i).re;
    s += Complex<Real>(p.re / d, p.im / d);
  }
  return s;
}

enum class SchurMode {
  unordered,    // j1 <= j2 <= j3
  all_ordered,  // every ordered triple; slow reference
};

/// First triple of character rows (reported 1-based) whose Schur sum is
/// below -10^-20, or none. Throws if a sum has an imaginary part above
/// 10^-30: it is real for any commutative fusion ring.
inline std::optional<ObstructionWitness> schur_product(const FusionRing& R, const CharacterTable& chars,
                                                       SchurMode mode = SchurMode::unordered) {
  if (!is_commutative(R)) throw std::domain_error("Schur product criterion requires a commutative ring");
  PrecisionGuard guard(chars.digits);
  const int r = chars.rank;
  const Real margin = power_of_ten(-20), imag_tol = power_of_ten(-30);
  for (int j1 = 0; j1 < r; ++j1)
    for (int j2 = mode == SchurMode::unordered ? j1 : 0; j2 < r; ++j2)
      for (int j3 = mode == SchurMode::unordered ? j2 : 0; j3 < r; ++j3) {
        const Complex<Real> s = schur_sum(chars, j1, j2, j3);
        if (abs(s.im) > imag_tol)
          throw std::runtime_error("Schur sum for rows (" + std::to_string(j1 + 1) + "," + std::to_string(j2 + 1) +
                                   "," + std::to_string(j3 + 1) + ") is not real: imaginary part " +
                                   decimal(s.im, 6));
        if (s.re < -margin)
          return ObstructionWitness{Criterion::schur_product, {j1 + 1, j2 + 1, j3 + 1}, decimal(s.re, 40)};
      }
  return std::nullopt;
}

/// Re-evaluates a witness: the ZSC conditions in exact integers, or the
/// Schur sum at the table's precision.
inline bool replay(const FusionRing& R, const ObstructionWitness& w, const CharacterTable* chars = nullptr) {
  if (w.criterion == Criterion::zero_spectrum) {
    if (w.indices.size() != 9) return false;
    std::array<int, 9> i{};
    for (int k = 0; k < 9; ++k) {
      if (w.indices[k] < 1 || w.indices[k] > R.rank()) return false;
      i[k] = w.indices[k];
    }
    return detail::ZeroSpectrum(R).holds(i);
  }
  if (!chars || w.indices.size() != 3) return false;
  PrecisionGuard guard(chars->digits);
  const Complex<Real> s = schur_sum(*chars, w.indices[0] - 1, w.indices[1] - 1, w.indices[2] - 1);
  return s.re < -power_of_ten(-20);
}

}  // namespace fusion
