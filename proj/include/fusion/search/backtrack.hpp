#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "fusion/search/plan.hpp"

namespace fusion::search {

/// Position in the search tree: values[0..depth] along the assignment order;
/// values[depth] is the next value to be tried at that depth.
struct SearchState {
  int depth = -1;
  std::vector<int> values;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t solutions = 0;
};

struct SearchOptions {
  /// Values for the first prefix.size() positions of the assignment order.
  std::vector<int> prefix;
  /// Positions explored; solutions are reported at this depth. Default: all.
  int stop_depth = -1;
  /// Stop after this many nodes and report where to resume.
  std::uint64_t node_budget = std::numeric_limits<std::uint64_t>::max();
  std::optional<SearchState> resume;
};

struct SearchOutcome {
  bool finished = true;
  SearchState checkpoint;  // meaningful when !finished
  SearchStats stats;
};

/// Depth-first nested loops over the planned variables. Each constraint is
/// checked as soon as its last unknown is set (cheapest first). An
/// associativity equality that is linear in that last unknown is solved for
/// it instead of looping, which also prunes when it has no integer solution
/// in range.
class Backtracker {
 public:
  /// Solutions arrive as values indexed by variable id (not order position).
  using Sink = std::function<void(std::span<const int>)>;

  Backtracker(const SearchPlan& plan, int bound) : plan_(plan), bound_(bound) {
    order_ = plan.order();
    nv_ = static_cast<int>(order_.size());
    std::vector<int> depth_of(static_cast<std::size_t>(plan.num_vars), -1);
    for (int k = 0; k < nv_; ++k) depth_of[order_[k]] = k;
    checks_.resize(static_cast<std::size_t>(nv_));
    solvers_.resize(static_cast<std::size_t>(nv_));
    for (int c = 0; c < static_cast<int>(plan.constraints.size()); ++c) {
      const Constraint& k = plan.constraints[c];
      if (k.unknowns.empty()) {
        constant_.push_back(c);
        continue;
      }
      int d = -1;
      for (int v : k.unknowns) d = std::max(d, depth_of[v]);
      const int last = order_[d];
      if (k.kind == ConstraintKind::associativity && linear_in(k, last)) {
        Solver s;
        for (const Term& t : k.terms) {
          if (t.x == last) s.linear.push_back({t.coef, t.y});
          else if (t.y == last) s.linear.push_back({t.coef, t.x});
          else s.rest.push_back(t);
        }
        solvers_[d].push_back(std::move(s));
      } else {
        checks_[d].push_back(c);
      }
    }
    for (auto& v : checks_)
      std::stable_sort(v.begin(), v.end(), [&](int a, int b) {
        return plan.constraints[a].unknowns.size() < plan.constraints[b].unknowns.size();
      });
  }

  int num_positions() const noexcept { return nv_; }
  const std::vector<int>& order() const noexcept { return order_; }

  SearchOutcome run(const SearchOptions& opt, const Sink& sink) {
    SearchOutcome out;
    const int stop = opt.stop_depth < 0 ? nv_ : std::min(opt.stop_depth, nv_);
    const int base = static_cast<int>(opt.prefix.size());
    vals_.assign(static_cast<std::size_t>(plan_.num_vars) + 2, 0);
    vals_[plan_.num_vars + 1] = 1;
    lo_.assign(static_cast<std::size_t>(nv_) + 1, 0);
    hi_.assign(static_cast<std::size_t>(nv_) + 1, 0);

    for (int c : constant_)
      if (!plan_.constraints[c].satisfied(vals_)) return out;

    for (int d = 0; d < base; ++d) {
      if (!range(d)) return out;
      const int v = opt.prefix[d];
      if (v < lo_[d] || v > hi_[d]) return out;
      vals_[order_[d]] = v;
      if (!check(d)) return out;
    }
    if (base >= stop) {
      ++out.stats.solutions;
      sink(vals_);
      return out;
    }

    int d = base;
    if (opt.resume && opt.resume->depth >= base) {
      const SearchState& st = *opt.resume;
      for (int k = base; k <= st.depth; ++k) {
        if (!range(k)) return out;
        vals_[order_[k]] = st.values[k];
      }
      d = st.depth;
      --vals_[order_[d]];
    } else {
      if (!range(d)) return out;
      vals_[order_[d]] = lo_[d] - 1;
    }

    std::uint64_t budget = opt.node_budget;
    for (;;) {
      int& cur = vals_[order_[d]];
      ++cur;
      if (cur > hi_[d]) {
        if (d == base) break;
        --d;
        continue;
      }
      if (budget == 0) {
        out.finished = false;
        out.checkpoint.depth = d;
        out.checkpoint.values.resize(static_cast<std::size_t>(d) + 1);
        for (int k = 0; k <= d; ++k) out.checkpoint.values[k] = vals_[order_[k]];
        return out;
      }
      --budget;
      ++out.stats.nodes;
      if (!check(d)) continue;
      if (d + 1 == stop) {
        ++out.stats.solutions;
        sink(vals_);
        continue;
      }
      ++d;
      if (!range(d)) {
        --d;
        continue;
      }
      vals_[order_[d]] = lo_[d] - 1;
    }
    return out;
  }

  /// Values of the first `depth` order positions for a solution vector.
  std::vector<int> prefix_of(std::span<const int> by_id, int depth) const {
    std::vector<int> p(static_cast<std::size_t>(depth));
    for (int k = 0; k < depth; ++k) p[k] = by_id[order_[k]];
    return p;
  }

 private:
  struct Solver {
    std::vector<std::pair<int, int>> linear;  // coef * value[slot] * x
    std::vector<Term> rest;
  };

  static bool linear_in(const Constraint& k, int v) {
    for (const Term& t : k.terms)
      if (t.x == v && t.y == v) return false;
    return true;
  }

  // Candidate interval for position d given values at earlier positions.
  bool range(int d) {
    int lo = 0, hi = bound_;
    for (const Solver& s : solvers_[d]) {
      long a = 0, b = 0;
      for (auto [coef, slot] : s.linear) a += static_cast<long>(coef) * vals_[slot];
      for (const Term& t : s.rest) b += static_cast<long>(t.coef) * vals_[t.x] * vals_[t.y];
      if (a == 0) {
        if (b != 0) return false;
        continue;
      }
      if (b % a != 0) return false;
      const long x = -b / a;
      if (x < lo || x > hi) return false;
      lo = hi = static_cast<int>(x);
    }
    lo_[d] = lo, hi_[d] = hi;
    return true;
  }

  bool check(int d) const {
    for (int c : checks_[d])
      if (!plan_.constraints[c].satisfied(vals_)) return false;
    return true;
  }

  const SearchPlan& plan_;
  int bound_;
  int nv_ = 0;
  std::vector<int> order_;
  std::vector<std::vector<int>> checks_;
  std::vector<std::vector<Solver>> solvers_;
  std::vector<int> constant_;
  std::vector<int> vals_, lo_, hi_;
};

/// Convenience: every assignment satisfying all constraints, as values by
/// variable id.
inline std::vector<std::vector<int>> backtrack(const SearchPlan& plan, int bound,
                                               SearchStats* stats = nullptr) {
  Backtracker bt(plan, bound);
  std::vector<std::vector<int>> out;
  const int nvars = plan.num_vars;
  auto res = bt.run({}, [&](std::span<const int> v) { out.emplace_back(v.begin(), v.begin() + nvars); });
  if (stats) *stats = res.stats;
  return out;
}

}  // namespace fusion::search
