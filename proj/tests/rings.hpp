#pragma once
// Reference rings and small independent helpers shared by the tests.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fusion/ring.hpp"

namespace testing_rings {

using fusion::FusionRing;

/// Builds a ring from a multiplication table written as strings like
/// "1+2+2*4": entry [a][b] is the product of a and b.
inline FusionRing from_products(const std::vector<std::vector<std::string>>& rows, std::vector<int> dual) {
  const int r = static_cast<int>(rows.size());
  std::vector<int> n(static_cast<std::size_t>(r) * r * r, 0);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      std::stringstream in(rows[a][b]);
      std::string term;
      while (std::getline(in, term, '+')) {
        int coef = 1, c = 0;
        if (const auto star = term.find('*'); star != std::string::npos) {
          coef = std::stoi(term.substr(0, star));
          c = std::stoi(term.substr(star + 1));
        } else {
          c = std::stoi(term);
        }
        n[(static_cast<std::size_t>(a) * r + b) * r + (c - 1)] += coef;
      }
    }
  return FusionRing(r, std::move(dual), std::move(n));
}

inline FusionRing fibonacci() { return from_products({{"1", "2"}, {"2", "1+2"}}, {1, 2}); }

inline FusionRing z2() { return from_products({{"1", "2"}, {"2", "1"}}, {1, 2}); }

/// The rank-6 non-commutative ring without non-trivial subgroup generated
/// by two Fibonacci particles.
inline FusionRing hecke_ring() {
  return from_products({{"1", "2", "3", "4", "5", "6"},
                        {"2", "1+2", "6", "4+5", "4", "3+6"},
                        {"3", "5", "1+3", "4+6", "2+5", "4"},
                        {"4", "4+6", "4+5", "1+2+3+2*4+5+6", "3+4+5+6", "2+4+5+6"},
                        {"5", "3+5", "4", "2+4+5+6", "4+6", "1+3+4"},
                        {"6", "4", "2+6", "3+4+5+6", "1+2+4", "4+5"}},
                       {1, 2, 3, 4, 6, 5});
}

/// Relabels R by perm (perm[a-1] = new label of a), written out directly.
inline FusionRing relabel(const FusionRing& R, const std::vector<int>& perm) {
  const int r = R.rank();
  std::vector<int> n(static_cast<std::size_t>(r) * r * r), dual(r);
  for (int a = 1; a <= r; ++a) {
    dual[perm[a - 1] - 1] = perm[R.dual(a) - 1];
    for (int b = 1; b <= r; ++b)
      for (int c = 1; c <= r; ++c)
        n[(static_cast<std::size_t>(perm[a - 1] - 1) * r + (perm[b - 1] - 1)) * r + (perm[c - 1] - 1)] = R.n(a, b, c);
  }
  return FusionRing(r, dual, n);
}

/// Isomorphism key by exhaustive search over every permutation fixing 1:
/// the smallest (dual, tensor) image. Only for small ranks.
inline std::vector<int> brute_key(const FusionRing& R) {
  const int r = R.rank();
  std::vector<int> perm(r);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<int> best;
  do {
    const FusionRing S = relabel(R, perm);
    std::vector<int> key(S.duals());
    key.insert(key.end(), S.tensor().begin(), S.tensor().end());
    if (best.empty() || key < best) best = key;
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return best;
}

}  // namespace testing_rings
