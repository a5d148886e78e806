#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fusion::search {

struct Triple {
  int a = 0, b = 0, c = 0;  // 1-based
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

/// One free unknown: a pivotal orbit of index triples none of which is fixed
/// by the unit or duality axioms.
struct VariableIndex {
  int id = 0;
  Triple representative;  // lexicographically smallest member of the orbit
  int bound = 0;          // values range over 0..bound
};

/// Dual map for the standard layout: labels 1..s are self-dual (s counts the
/// unit), the rest come in adjacent dual pairs (s+1, s+2), (s+3, s+4), ...
inline std::vector<int> layout_dual(int r, int s) {
  if (r < 1 || s < 1 || s > r || (r - s) % 2 != 0)
    throw std::invalid_argument("inconsistent (rank, self-dual count): (" + std::to_string(r) +
                                ", " + std::to_string(s) + ")");
  std::vector<int> dual(static_cast<std::size_t>(r));
  for (int a = 1; a <= s; ++a) dual[a - 1] = a;
  for (int a = s + 1; a <= r; a += 2) dual[a - 1] = a + 1, dual[a] = a;
  return dual;
}

/// Maps each index triple either to a variable or to a constant. Constants
/// live in two extra value slots so evaluation never branches on them.
class VariableSet {
 public:
  VariableSet(int rank, int bound, std::vector<int> dual) : rank_(rank), dual_(std::move(dual)) {
    if (rank_ < 1 || static_cast<int>(dual_.size()) != rank_)
      throw std::invalid_argument("dual map size does not match rank");
    for (int a = 1; a <= rank_; ++a)
      if (dual_[a - 1] < 1 || dual_[a - 1] > rank_ || dual_[dual_[a - 1] - 1] != a)
        throw std::invalid_argument("dual map is not an involution");
    if (dual_[0] != 1) throw std::invalid_argument("unit must be self-dual");
    build(bound);
  }

  int rank() const noexcept { return rank_; }
  const std::vector<int>& dual() const noexcept { return dual_; }
  int size() const noexcept { return static_cast<int>(vars_.size()); }
  const std::vector<VariableIndex>& variables() const noexcept { return vars_; }

  int zero_slot() const noexcept { return size(); }
  int one_slot() const noexcept { return size() + 1; }
  bool is_constant(int slot) const noexcept { return slot >= size(); }

  /// Slot of N_{ab}^c (1-based indices).
  int slot(int a, int b, int c) const noexcept {
    return slots_[(static_cast<std::size_t>(a - 1) * rank_ + (b - 1)) * rank_ + (c - 1)];
  }
  int slot(const Triple& t) const noexcept { return slot(t.a, t.b, t.c); }

  /// Structure tensor for an assignment of the variables.
  std::vector<int> expand(std::span<const int> values) const {
    std::vector<int> n(slots_.size());
    for (std::size_t k = 0; k < slots_.size(); ++k) {
      const int s = slots_[k];
      n[k] = s == zero_slot() ? 0 : s == one_slot() ? 1 : values[s];
    }
    return n;
  }

 private:
  std::size_t flat(int a, int b, int c) const {
    return (static_cast<std::size_t>(a - 1) * rank_ + (b - 1)) * rank_ + (c - 1);
  }
  int d(int a) const { return dual_[a - 1]; }

  void build(int bound) {
    const std::size_t total = static_cast<std::size_t>(rank_) * rank_ * rank_;
    std::vector<std::size_t> parent(total);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    auto unite = [&](std::size_t x, std::size_t y) {
      x = find(x), y = find(y);
      if (x != y) parent[std::max(x, y)] = std::min(x, y);
    };
    for (int a = 1; a <= rank_; ++a)
      for (int b = 1; b <= rank_; ++b)
        for (int c = 1; c <= rank_; ++c) {
          const std::size_t here = flat(a, b, c);
          unite(here, flat(d(a), c, b));
          unite(here, flat(c, d(b), a));
          unite(here, flat(b, d(c), d(a)));
          unite(here, flat(d(c), a, d(b)));
          unite(here, flat(d(b), d(a), d(c)));
        }

    // Forced values: -1 = free, 0/1 constant.
    std::vector<int> forced(total, -1);
    for (int a = 1; a <= rank_; ++a)
      for (int b = 1; b <= rank_; ++b)
        for (int c = 1; c <= rank_; ++c) {
          int v = -1;
          if (a == 1) v = b == c;
          else if (b == 1) v = a == c;
          else if (c == 1) v = b == d(a);
          if (v < 0) continue;
          int& f = forced[find(flat(a, b, c))];
          if (f >= 0 && f != v) throw std::logic_error("unit/duality constants disagree on an orbit");
          f = v;
        }

    slots_.assign(total, -1);
    std::vector<int> root_slot(total, -1);
    for (int a = 1; a <= rank_; ++a)
      for (int b = 1; b <= rank_; ++b)
        for (int c = 1; c <= rank_; ++c) {
          const std::size_t root = find(flat(a, b, c));
          if (root_slot[root] < 0 && forced[root] < 0) {
            root_slot[root] = static_cast<int>(vars_.size());
            vars_.push_back({static_cast<int>(vars_.size()), {a, b, c}, bound});
          }
        }
    const int nv = static_cast<int>(vars_.size());
    for (std::size_t k = 0; k < total; ++k) {
      const std::size_t root = find(k);
      slots_[k] = forced[root] == 0 ? nv : forced[root] == 1 ? nv + 1 : root_slot[root];
    }
  }

  int rank_;
  std::vector<int> dual_;
  std::vector<VariableIndex> vars_;
  std::vector<int> slots_;
};

inline VariableSet reduced_variables(int r, int m, int s) {
  return VariableSet(r, m, layout_dual(r, s));
}

/// Number of assignments before any constraint is checked: (m+1)^#variables.
inline boost::multiprecision::cpp_int search_space_size(int r, int m, int s) {
  const auto vars = reduced_variables(r, m, s);
  boost::multiprecision::cpp_int out = 1;
  for (int i = 0; i < vars.size(); ++i) out *= (m + 1);
  return out;
}

// --- Constraints --------------------------------------------------------------

enum class ConstraintKind { associativity, order, guarded_order, budget };

/// coef * value[x] * value[y]; x <= y are value slots.
struct Term {
  int coef = 0;
  int x = 0, y = 0;
  friend auto operator<=>(const Term&, const Term&) = default;
};

/// A constraint over value slots. Which fields are used depends on kind:
///   associativity   sum(terms) == 0
///   order           value[lhs] <= value[rhs]
///   guarded_order   some guard pair differs, or value[lhs] <= value[rhs]
///   budget          sum(value[greater]) >= sum(value[lesser])
struct Constraint {
  ConstraintKind kind = ConstraintKind::associativity;
  std::vector<Term> terms;
  std::vector<std::pair<int, int>> guards;
  int lhs = 0, rhs = 0;
  std::vector<int> greater, lesser;
  std::vector<int> unknowns;  // sorted distinct variable ids

  bool satisfied(std::span<const int> v) const {
    switch (kind) {
      case ConstraintKind::associativity: {
        long s = 0;
        for (const Term& t : terms) s += static_cast<long>(t.coef) * v[t.x] * v[t.y];
        return s == 0;
      }
      case ConstraintKind::order:
      case ConstraintKind::guarded_order:
        for (auto [x, y] : guards)
          if (v[x] != v[y]) return true;
        return v[lhs] <= v[rhs];
      case ConstraintKind::budget: {
        long s = 0;
        for (int x : greater) s += v[x];
        for (int x : lesser) s -= v[x];
        return s >= 0;
      }
    }
    return false;
  }

  /// Identity used for de-duplication.
  auto signature() const {
    return std::tie(kind, terms, guards, lhs, rhs, greater, lesser);
  }
};

namespace detail {

inline void collect_unknowns(Constraint& c, const VariableSet& vs) {
  std::set<int> u;
  auto add = [&](int slot) {
    if (!vs.is_constant(slot)) u.insert(slot);
  };
  for (const Term& t : c.terms) add(t.x), add(t.y);
  for (auto [x, y] : c.guards) add(x), add(y);
  if (c.kind == ConstraintKind::order || c.kind == ConstraintKind::guarded_order) add(c.lhs), add(c.rhs);
  for (int x : c.greater) add(x);
  for (int x : c.lesser) add(x);
  c.unknowns.assign(u.begin(), u.end());
}

inline void dedup(std::vector<Constraint>& cs) {
  std::vector<Constraint> out;
  out.reserve(cs.size());
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    bool dup = false;
    for (std::size_t j : keep)
      if (cs[j].signature() == cs[i].signature()) {
        dup = true;
        break;
      }
    if (!dup) keep.push_back(i);
  }
  for (std::size_t i : keep) out.push_back(std::move(cs[i]));
  cs = std::move(out);
}

}  // namespace detail

/// One normalized quadratic equality per (a,b,c,d) after substituting orbit
/// slots; tautologies and duplicates (up to sign) are dropped. A constant
/// non-zero equality (an infeasible system) is kept with no unknowns.
inline std::vector<Constraint> associativity_constraints(const VariableSet& vs) {
  const int r = vs.rank();
  const int zero = vs.zero_slot();
  std::set<std::vector<Term>> seen;
  std::vector<Constraint> out;
  std::vector<Term> raw;
  for (int a = 2; a <= r; ++a)
    for (int b = 2; b <= r; ++b)
      for (int c = 2; c <= r; ++c)
        for (int d = 1; d <= r; ++d) {
          raw.clear();
          auto push = [&](int coef, int x, int y) {
            if (x == zero || y == zero) return;
            if (x > y) std::swap(x, y);
            raw.push_back({coef, x, y});
          };
          for (int e = 1; e <= r; ++e) {
            push(+1, vs.slot(a, b, e), vs.slot(e, c, d));
            push(-1, vs.slot(b, c, e), vs.slot(a, e, d));
          }
          std::sort(raw.begin(), raw.end(),
                    [](const Term& p, const Term& q) { return std::tie(p.x, p.y) < std::tie(q.x, q.y); });
          std::vector<Term> merged;
          for (const Term& t : raw) {
            if (!merged.empty() && merged.back().x == t.x && merged.back().y == t.y)
              merged.back().coef += t.coef;
            else
              merged.push_back(t);
          }
          std::erase_if(merged, [](const Term& t) { return t.coef == 0; });
          if (merged.empty()) continue;
          if (merged.front().coef < 0)
            for (Term& t : merged) t.coef = -t.coef;
          if (!seen.insert(merged).second) continue;
          Constraint k;
          k.kind = ConstraintKind::associativity;
          k.terms = std::move(merged);
          detail::collect_unknowns(k, vs);
          out.push_back(std::move(k));
        }
  return out;
}

/// Symmetry-breaking inequalities built from iota_a(i) = N_{a i}^i.
///
/// The self-dual block (labels 2..s) gets the guarded sorted chain: for each
/// particle i of the block and consecutive later positions j, j+1, either
/// iota_n separates j and j+1 for some earlier particle n, or
/// iota_i(j) <= iota_i(j+1); plus the budget rule that particle 2 has the
/// largest trace sum_i iota(i) in its block. The dual-pair block is treated
/// the same way with whole pairs as units, keyed on each pair's first label,
/// so no particle is ever compared with its own dual and the two blocks are
/// never compared with each other.
inline std::vector<Constraint> symmetry_constraints(const VariableSet& vs) {
  const int r = vs.rank();
  const auto& dual = vs.dual();
  auto iota = [&](int a, int i) { return vs.slot(a, i, i); };

  std::vector<int> self_block, pair_block;  // positions; pairs by first label
  for (int a = 2; a <= r; ++a) {
    if (dual[a - 1] == a) self_block.push_back(a);
    else if (a < dual[a - 1]) pair_block.push_back(a);
  }

  std::vector<Constraint> out;
  auto emit_block = [&](const std::vector<int>& pos) {
    const int q = static_cast<int>(pos.size());
    for (int i = 0; i < q; ++i)
      for (int j = i + 1; j + 1 < q; ++j) {
        Constraint k;
        k.kind = i == 0 ? ConstraintKind::order : ConstraintKind::guarded_order;
        bool always = false;
        for (int n = 0; n < i; ++n) {
          const int x = iota(pos[n], pos[j]), y = iota(pos[n], pos[j + 1]);
          if (x == y) continue;
          if (vs.is_constant(x) && vs.is_constant(y)) {
            always = true;  // constants differ, guard always fires
            break;
          }
          k.guards.emplace_back(x, y);
        }
        k.lhs = iota(pos[i], pos[j]);
        k.rhs = iota(pos[i], pos[j + 1]);
        if (always || k.lhs == k.rhs) continue;
        if (k.guards.empty()) k.kind = ConstraintKind::order;
        detail::collect_unknowns(k, vs);
        out.push_back(std::move(k));
      }
    for (int k2 = 1; k2 < q; ++k2) {
      Constraint k;
      k.kind = ConstraintKind::budget;
      std::multiset<int> hi, lo;
      for (int i = 1; i <= r; ++i) hi.insert(iota(pos[0], i)), lo.insert(iota(pos[k2], i));
      // cancel common slots
      for (auto it = hi.begin(); it != hi.end();) {
        auto jt = lo.find(*it);
        if (jt != lo.end()) {
          lo.erase(jt);
          it = hi.erase(it);
        } else {
          ++it;
        }
      }
      std::erase_if(hi, [&](int s) { return s == vs.zero_slot(); });
      std::erase_if(lo, [&](int s) { return s == vs.zero_slot(); });
      if (lo.empty()) continue;
      k.greater.assign(hi.begin(), hi.end());
      k.lesser.assign(lo.begin(), lo.end());
      detail::collect_unknowns(k, vs);
      out.push_back(std::move(k));
    }
  };
  emit_block(self_block);
  emit_block(pair_block);
  detail::dedup(out);
  return out;
}

}  // namespace fusion::search
