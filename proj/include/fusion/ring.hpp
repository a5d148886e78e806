#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fusion {

/// Thrown when the raw data cannot describe a rank-r ring at all
/// (wrong tensor size, negative entries, dual index out of range).
/// Axiom violations are reported through ValidationReport instead.
class structural_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A based ring with non-negative integer structure constants and a duality
/// map. Basis labels are 1-based and label 1 is the unit.
///
/// Construction only checks shape; call validate() for the fusion axioms.
/// Instances are immutable.
class FusionRing {
 public:
  FusionRing() = default;

  FusionRing(int rank, std::vector<int> dual, std::vector<int> tensor)
      : rank_(rank), dual_(std::move(dual)), n_(std::move(tensor)) {
    if (rank_ < 1) throw structural_error("rank must be positive");
    const auto r = static_cast<std::size_t>(rank_);
    if (dual_.size() != r)
      throw structural_error("dual map has " + std::to_string(dual_.size()) +
                             " entries, expected " + std::to_string(r));
    if (n_.size() != r * r * r)
      throw structural_error("structure tensor has " + std::to_string(n_.size()) +
                             " entries, expected " + std::to_string(r * r * r));
    for (int d : dual_)
      if (d < 1 || d > rank_) throw structural_error("dual index out of range");
    for (int v : n_)
      if (v < 0) throw structural_error("negative structure constant");
    multiplicity_ = n_.empty() ? 0 : *std::max_element(n_.begin(), n_.end());
  }

  /// Builds from nested N[a][b][c] (0-based containers, 1-based meaning).
  static FusionRing from_nested(const std::vector<int>& dual,
                                const std::vector<std::vector<std::vector<int>>>& nested) {
    const int r = static_cast<int>(nested.size());
    std::vector<int> flat;
    flat.reserve(static_cast<std::size_t>(r) * r * r);
    for (const auto& plane : nested) {
      if (static_cast<int>(plane.size()) != r) throw structural_error("ragged structure tensor");
      for (const auto& row : plane) {
        if (static_cast<int>(row.size()) != r) throw structural_error("ragged structure tensor");
        flat.insert(flat.end(), row.begin(), row.end());
      }
    }
    return FusionRing(r, dual, std::move(flat));
  }

  int rank() const noexcept { return rank_; }
  int multiplicity() const noexcept { return multiplicity_; }

  /// N_{ab}^c, 1-based.
  int n(int a, int b, int c) const noexcept { return n_[index(a - 1, b - 1, c - 1)]; }
  /// Dual of basis element a, 1-based.
  int dual(int a) const noexcept { return dual_[static_cast<std::size_t>(a - 1)]; }

  const std::vector<int>& duals() const noexcept { return dual_; }
  /// Flat tensor in lexicographic (a,b,c) order.
  std::span<const int> tensor() const noexcept { return n_; }

  std::size_t index(int a0, int b0, int c0) const noexcept {
    const auto r = static_cast<std::size_t>(rank_);
    return (static_cast<std::size_t>(a0) * r + static_cast<std::size_t>(b0)) * r +
           static_cast<std::size_t>(c0);
  }
  /// 0-based access for inner loops.
  int at0(int a0, int b0, int c0) const noexcept { return n_[index(a0, b0, c0)]; }

  int self_dual_count() const noexcept {
    int s = 0;
    for (int a = 1; a <= rank_; ++a) s += dual(a) == a;
    return s;
  }
  int non_self_dual_count() const noexcept { return rank_ - self_dual_count(); }
  int nonzero_count() const noexcept {
    return static_cast<int>(std::count_if(n_.begin(), n_.end(), [](int v) { return v != 0; }));
  }

  friend bool operator==(const FusionRing&, const FusionRing&) = default;

 private:
  int rank_ = 0;
  std::vector<int> dual_;
  std::vector<int> n_;
  int multiplicity_ = 0;
};

using IntMatrix = std::vector<std::vector<int>>;

/// [N_a]: row b, column c holds N_{ab}^c. Column-vector convention: the
/// vector of Frobenius-Perron dimensions is a right eigenvector.
inline IntMatrix fusion_matrix(const FusionRing& ring, int a) {
  const int r = ring.rank();
  IntMatrix m(static_cast<std::size_t>(r), std::vector<int>(static_cast<std::size_t>(r)));
  for (int b = 0; b < r; ++b)
    for (int c = 0; c < r; ++c) m[b][c] = ring.at0(a - 1, b, c);
  return m;
}

inline std::vector<IntMatrix> fusion_matrices(const FusionRing& ring) {
  std::vector<IntMatrix> out;
  out.reserve(static_cast<std::size_t>(ring.rank()));
  for (int a = 1; a <= ring.rank(); ++a) out.push_back(fusion_matrix(ring, a));
  return out;
}

inline bool is_commutative(const FusionRing& ring) {
  const int r = ring.rank();
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b)
      for (int c = 0; c < r; ++c)
        if (ring.at0(a, b, c) != ring.at0(b, a, c)) return false;
  return true;
}

/// Relabels the basis: element a of `ring` becomes perm[a-1] (1-based values).
/// perm[0] must be 1 for the result to keep the unit at label 1.
inline FusionRing permute(const FusionRing& ring, std::span<const int> perm) {
  const int r = ring.rank();
  if (static_cast<int>(perm.size()) != r) throw structural_error("permutation size mismatch");
  std::vector<int> seen(static_cast<std::size_t>(r), 0);
  for (int p : perm) {
    if (p < 1 || p > r || seen[p - 1]++) throw structural_error("not a permutation");
  }
  std::vector<int> n(static_cast<std::size_t>(r) * r * r);
  std::vector<int> dual(static_cast<std::size_t>(r));
  const auto ru = static_cast<std::size_t>(r);
  for (int a = 0; a < r; ++a) {
    dual[perm[a] - 1] = perm[ring.dual(a + 1) - 1];
    for (int b = 0; b < r; ++b)
      for (int c = 0; c < r; ++c)
        n[(static_cast<std::size_t>(perm[a] - 1) * ru + perm[b] - 1) * ru + perm[c] - 1] =
            ring.at0(a, b, c);
  }
  return FusionRing(r, std::move(dual), std::move(n));
}

/// Ring on a subset of basis labels (1-based, must contain 1 first).
inline FusionRing induced_ring(const FusionRing& ring, std::span<const int> subset) {
  const int k = static_cast<int>(subset.size());
  std::vector<int> pos(static_cast<std::size_t>(ring.rank()) + 1, 0);
  for (int i = 0; i < k; ++i) pos[subset[i]] = i + 1;
  std::vector<int> dual(static_cast<std::size_t>(k));
  std::vector<int> n(static_cast<std::size_t>(k) * k * k);
  for (int i = 0; i < k; ++i) {
    const int d = pos[ring.dual(subset[i])];
    if (d == 0) throw structural_error("subset not closed under duality");
    dual[i] = d;
    for (int j = 0; j < k; ++j)
      for (int l = 0; l < k; ++l)
        n[(static_cast<std::size_t>(i) * k + j) * k + l] = ring.n(subset[i], subset[j], subset[l]);
  }
  return FusionRing(k, std::move(dual), std::move(n));
}

/// Direct product; element (i, j) gets label (i-1)*rank(b) + j.
inline FusionRing direct_product(const FusionRing& a, const FusionRing& b) {
  const int ra = a.rank(), rb = b.rank(), r = ra * rb;
  auto lab = [rb](int i, int j) { return i * rb + j; };  // 0-based
  std::vector<int> dual(static_cast<std::size_t>(r));
  std::vector<int> n(static_cast<std::size_t>(r) * r * r, 0);
  const auto ru = static_cast<std::size_t>(r);
  for (int a1 = 0; a1 < ra; ++a1)
    for (int a2 = 0; a2 < rb; ++a2) {
      dual[lab(a1, a2)] = lab(a.dual(a1 + 1) - 1, b.dual(a2 + 1) - 1) + 1;
      for (int b1 = 0; b1 < ra; ++b1)
        for (int b2 = 0; b2 < rb; ++b2)
          for (int c1 = 0; c1 < ra; ++c1) {
            const int x = a.at0(a1, b1, c1);
            if (x == 0) continue;
            for (int c2 = 0; c2 < rb; ++c2)
              n[(static_cast<std::size_t>(lab(a1, a2)) * ru + lab(b1, b2)) * ru + lab(c1, c2)] =
                  x * b.at0(a2, b2, c2);
          }
    }
  return FusionRing(r, std::move(dual), std::move(n));
}

/// The rank-1 ring.
inline FusionRing trivial_ring() { return FusionRing(1, {1}, {1}); }

}  // namespace fusion
