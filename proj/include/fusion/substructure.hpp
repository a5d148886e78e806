#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <set>
#include <vector>

#include "fusion/ring.hpp"

namespace fusion {

/// Basis elements a with a x dual(a) = 1 exactly. They form the largest
/// subgroup of the ring (its group of invertible basis elements).
inline std::vector<int> invertible_subgroup(const FusionRing& R) {
  std::vector<int> out;
  for (int a = 1; a <= R.rank(); ++a) {
    int total = 0;
    for (int c = 1; c <= R.rank(); ++c) total += R.n(a, R.dual(a), c);
    if (total == 1 && R.n(a, R.dual(a), 1) == 1) out.push_back(a);
  }
  return out;
}

namespace detail {

using Mask = std::uint64_t;

inline Mask fusion_closure(const FusionRing& R, Mask s) {
  const int r = R.rank();
  for (;;) {
    Mask next = s | 1u;
    for (int a = 0; a < r; ++a) {
      if (!(s >> a & 1u)) continue;
      next |= Mask{1} << (R.dual(a + 1) - 1);
      for (int b = 0; b < r; ++b) {
        if (!(s >> b & 1u)) continue;
        for (int c = 0; c < r; ++c)
          if (R.at0(a, b, c) != 0) next |= Mask{1} << c;
      }
    }
    if (next == s) return s;
    s = next;
  }
}

inline std::vector<int> mask_to_labels(Mask m) {
  std::vector<int> out;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1u) out.push_back(i + 1);
  return out;
}

}  // namespace detail

/// All subsets of the basis containing 1 that are closed under fusion and
/// duality, ordered by size and then lexicographically. Limited to rank 64.
inline std::vector<std::vector<int>> sub_fusion_rings(const FusionRing& R) {
  using detail::Mask;
  if (R.rank() > 64) throw structural_error("sub_fusion_rings supports rank <= 64");
  std::set<Mask> found;
  std::deque<Mask> todo;
  const Mask unit = detail::fusion_closure(R, 1u);
  found.insert(unit);
  todo.push_back(unit);
  while (!todo.empty()) {
    const Mask s = todo.front();
    todo.pop_front();
    for (int x = 0; x < R.rank(); ++x) {
      if (s >> x & 1u) continue;
      const Mask t = detail::fusion_closure(R, s | (Mask{1} << x));
      if (found.insert(t).second) todo.push_back(t);
    }
  }
  std::vector<std::vector<int>> out;
  for (Mask m : found) out.push_back(detail::mask_to_labels(m));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

/// True when the only sub fusion rings are {1} and the whole basis.
inline bool is_simple(const FusionRing& R) { return sub_fusion_rings(R).size() <= 2; }

}  // namespace fusion
