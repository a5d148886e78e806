#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fusion/dimensions.hpp"
#include "fusion/ring.hpp"

namespace fusion {

/// Maximal lexicographic flattening of the structure constants over the
/// admissible relabelings, plus the relabeling that attains it.
struct CanonicalCode {
  std::vector<int> digits;  // N_{11}^1, N_{11}^2, ..., N_{rr}^r of the canonical table
  std::vector<int> relabel;  // element a of the input becomes relabel[a-1]

  friend bool operator==(const CanonicalCode& a, const CanonicalCode& b) {
    return a.digits == b.digits;
  }
  friend auto operator<=>(const CanonicalCode& a, const CanonicalCode& b) {
    if (a.digits.size() != b.digits.size()) return a.digits.size() <=> b.digits.size();
    return a.digits <=> b.digits;
  }
};

/// Which relabelings count as admissible.
enum class CanonicalMode {
  /// Unit fixed; self-dual elements before dual pairs; each block sorted by
  /// Frobenius-Perron dimension, then by the number of non-zero entries of
  /// the element's fusion matrix.
  restricted,
  /// Same, without the non-zero-count key.
  dimension_only,
};

/// The digit string read as a base-(m+1) numeral, in decimal.
inline std::string code_numeral(const CanonicalCode& code, int multiplicity) {
  boost::multiprecision::cpp_int v = 0;
  for (int d : code.digits) v = v * (multiplicity + 1) + d;
  return v.str();
}

namespace detail {

/// Groups equal doubles (relative tolerance) into consecutive cluster ids.
inline std::vector<int> cluster_values(const std::vector<double>& xs, double rel_tol = 1e-9) {
  std::vector<int> idx(xs.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return xs[a] < xs[b]; });
  std::vector<int> id(xs.size(), 0);
  int cur = 0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k > 0 && xs[idx[k]] - xs[idx[k - 1]] > rel_tol * std::max(1.0, std::abs(xs[idx[k]])))
      ++cur;
    id[idx[k]] = cur;
  }
  return id;
}

struct Unit {
  int first = 0;   // 1-based label
  int second = 0;  // dual partner, 0 for self-dual units
  std::tuple<int, int, int> key;  // (block, dimension cluster, non-zero count)
};

class CanonicalSearch {
 public:
  CanonicalSearch(const FusionRing& R, CanonicalMode mode) : R_(R), r_(R.rank()) {
    const auto dims = fp_dimensions_double(R);
    const auto cluster = cluster_values(dims);
    std::vector<int> nonzero(r_, 0);
    if (mode == CanonicalMode::restricted)
      for (int a = 0; a < r_; ++a)
        for (int b = 0; b < r_; ++b)
          for (int c = 0; c < r_; ++c) nonzero[a] += R.at0(a, b, c) != 0;
    for (int a = 2; a <= r_; ++a) {
      const int d = R.dual(a);
      if (d == a)
        units_.push_back({a, 0, {0, cluster[a - 1], nonzero[a - 1]}});
      else if (a < d)
        units_.push_back({a, d, {1, cluster[a - 1], nonzero[a - 1]}});
    }
    std::stable_sort(units_.begin(), units_.end(),
                     [](const Unit& x, const Unit& y) { return x.key < y.key; });
    order_.assign(r_, 0);
    order_[0] = 1;
    used_.assign(units_.size(), 0);
  }

  CanonicalCode run() {
    place(0, 1);
    CanonicalCode out;
    out.digits = std::move(best_);
    out.relabel.assign(r_, 0);
    for (int i = 0; i < r_; ++i) out.relabel[best_order_[i] - 1] = i + 1;
    return out;
  }

 private:
  // Fill unit slot u (sorted position) starting at label position pos.
  void place(std::size_t u, int pos) {
    if (u == units_.size()) return evaluate();
    for (std::size_t k = 0; k < units_.size(); ++k) {
      if (used_[k] || units_[k].key != units_[u].key) continue;
      used_[k] = 1;
      const Unit& x = units_[k];
      if (x.second == 0) {
        order_[pos] = x.first;
        place(u + 1, pos + 1);
      } else {
        order_[pos] = x.first, order_[pos + 1] = x.second;
        place(u + 1, pos + 2);
        order_[pos] = x.second, order_[pos + 1] = x.first;
        place(u + 1, pos + 2);
      }
      used_[k] = 0;
    }
  }

  int digit(std::size_t flat) const {
    const int c = static_cast<int>(flat % r_), ab = static_cast<int>(flat / r_);
    const int b = ab % r_, a = ab / r_;
    return R_.at0(order_[a] - 1, order_[b] - 1, order_[c] - 1);
  }

  void evaluate() {
    const std::size_t total = static_cast<std::size_t>(r_) * r_ * r_;
    if (best_.empty()) {
      best_.resize(total);
      for (std::size_t i = 0; i < total; ++i) best_[i] = digit(i);
      best_order_ = order_;
      return;
    }
    for (std::size_t i = 0; i < total; ++i) {
      const int d = digit(i);
      if (d < best_[i]) return;
      if (d > best_[i]) {
        for (std::size_t j = i; j < total; ++j) best_[j] = digit(j);
        best_order_ = order_;
        return;
      }
    }
  }

  const FusionRing& R_;
  int r_;
  std::vector<Unit> units_;
  std::vector<int> order_;  // new position -> old label
  std::vector<char> used_;
  std::vector<int> best_;
  std::vector<int> best_order_;
};

}  // namespace detail

inline CanonicalCode canonical_form(const FusionRing& R,
                                    CanonicalMode mode = CanonicalMode::restricted) {
  return detail::CanonicalSearch(R, mode).run();
}

/// The relabeled ring whose flattening is the canonical code.
inline FusionRing canonical_representative(const FusionRing& R,
                                           CanonicalMode mode = CanonicalMode::restricted) {
  return permute(R, canonical_form(R, mode).relabel);
}

/// A relabeling pi (element a of `a` becomes pi[a-1]) with permute(a, pi) == b,
/// or nullopt when the rings are not isomorphic.
inline std::optional<std::vector<int>> equivalent(const FusionRing& a, const FusionRing& b) {
  if (a.rank() != b.rank() || a.multiplicity() != b.multiplicity() ||
      a.self_dual_count() != b.self_dual_count() || a.nonzero_count() != b.nonzero_count())
    return std::nullopt;
  const CanonicalCode ca = canonical_form(a), cb = canonical_form(b);
  if (ca.digits != cb.digits) return std::nullopt;
  std::vector<int> inv_b(b.rank());
  for (int x = 0; x < b.rank(); ++x) inv_b[cb.relabel[x] - 1] = x + 1;
  std::vector<int> pi(a.rank());
  for (int x = 0; x < a.rank(); ++x) pi[x] = inv_b[ca.relabel[x] - 1];
  return pi;
}

// --- Naming -----------------------------------------------------------------

/// FR^{r,m,n}_i; multiplicity is omitted from the printed form when it is 1.
struct RingName {
  int rank = 0;
  int multiplicity = 0;
  int non_self_dual = 0;
  int index = 0;

  std::string str() const {
    std::string s = "FR^{" + std::to_string(rank) + ",";
    if (multiplicity != 1) s += std::to_string(multiplicity) + ",";
    return s + std::to_string(non_self_dual) + "}_" + std::to_string(index);
  }
  friend bool operator==(const RingName&, const RingName&) = default;
};

/// Catalog ordering key: multiplicity, rank, non-self-dual count, number of
/// non-zero structure constants, canonical code.
struct NamingKey {
  int multiplicity, rank, non_self_dual, nonzero;
  std::vector<int> code;
  friend auto operator<=>(const NamingKey&, const NamingKey&) = default;
  friend bool operator==(const NamingKey&, const NamingKey&) = default;
};

inline NamingKey naming_key(const FusionRing& R) {
  return {R.multiplicity(), R.rank(), R.non_self_dual_count(), R.nonzero_count(),
          canonical_form(R).digits};
}

/// Sorts a catalog into naming order (stable for equal keys).
inline void sort_catalog(std::vector<FusionRing>& catalog) {
  std::vector<std::pair<NamingKey, std::size_t>> keyed;
  keyed.reserve(catalog.size());
  for (std::size_t i = 0; i < catalog.size(); ++i) keyed.emplace_back(naming_key(catalog[i]), i);
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<FusionRing> out;
  out.reserve(catalog.size());
  for (auto& [k, i] : keyed) out.push_back(std::move(catalog[i]));
  catalog = std::move(out);
}

/// Names for every entry of a catalog already in naming order: index i is
/// the 1-based position among entries sharing (rank, multiplicity, n).
inline std::vector<RingName> catalog_names(const std::vector<FusionRing>& sorted_catalog) {
  std::vector<RingName> out;
  out.reserve(sorted_catalog.size());
  for (std::size_t k = 0; k < sorted_catalog.size(); ++k) {
    const FusionRing& R = sorted_catalog[k];
    RingName n{R.rank(), R.multiplicity(), R.non_self_dual_count(), 1};
    if (k > 0) {
      const RingName& prev = out.back();
      if (prev.rank == n.rank && prev.multiplicity == n.multiplicity &&
          prev.non_self_dual == n.non_self_dual)
        n.index = prev.index + 1;
    }
    out.push_back(n);
  }
  return out;
}

/// Name of `R` relative to a catalog in naming order; nullopt if absent.
inline std::optional<RingName> ring_name(const FusionRing& R,
                                         const std::vector<FusionRing>& sorted_catalog) {
  const auto names = catalog_names(sorted_catalog);
  const auto code = canonical_form(R).digits;
  for (std::size_t k = 0; k < sorted_catalog.size(); ++k) {
    const FusionRing& C = sorted_catalog[k];
    if (C.rank() == R.rank() && C.multiplicity() == R.multiplicity() &&
        canonical_form(C).digits == code)
      return names[k];
  }
  return std::nullopt;
}

}  // namespace fusion
