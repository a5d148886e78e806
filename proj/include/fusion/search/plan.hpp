#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "fusion/search/system.hpp"

namespace fusion::search {

/// Constraint groups C[i] with the fresh unknowns V[i] they introduce.
/// Every constraint in C[i] mentions only variables of V[1..i].
struct SearchPlan {
  int num_vars = 0;
  std::vector<Constraint> constraints;
  std::vector<std::vector<int>> groups;       // C[i]: indices into constraints
  std::vector<std::vector<int>> group_vars;   // V[i]: variable ids

  /// Variable assignment order (concatenation of V[1..k]).
  std::vector<int> order() const {
    std::vector<int> out;
    for (const auto& v : group_vars) out.insert(out.end(), v.begin(), v.end());
    return out;
  }

  /// FNV-1a over the assignment order and each constraint's unknown set.
  std::uint64_t hash() const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::uint64_t x) {
      h ^= x;
      h *= 1099511628211ull;
    };
    mix(static_cast<std::uint64_t>(num_vars));
    for (int v : order()) mix(static_cast<std::uint64_t>(v));
    for (const auto& g : groups)
      for (int c : g) {
        mix(static_cast<std::uint64_t>(constraints[c].kind));
        for (int u : constraints[c].unknowns) mix(static_cast<std::uint64_t>(u) + 7);
      }
    return h;
  }
};

/// Greedy ordering: repeatedly take the constraint with the fewest unknowns
/// not yet planned (ties: smaller largest new variable id, then input order).
/// A constraint with new unknowns opens a group; constraints that need
/// nothing new join the current group. Variables mentioned by no
/// constraint form a trailing unconstrained group.
inline SearchPlan plan_search(std::vector<Constraint> constraints, int num_vars) {
  SearchPlan plan;
  plan.num_vars = num_vars;
  const int nc = static_cast<int>(constraints.size());
  std::vector<char> known(static_cast<std::size_t>(num_vars), 0), done(static_cast<std::size_t>(nc), 0);
  std::vector<int> fresh(static_cast<std::size_t>(nc)), max_fresh(static_cast<std::size_t>(nc));
  std::vector<std::vector<int>> mentions(static_cast<std::size_t>(num_vars));
  for (int c = 0; c < nc; ++c) {
    fresh[c] = static_cast<int>(constraints[c].unknowns.size());
    max_fresh[c] = constraints[c].unknowns.empty() ? -1 : constraints[c].unknowns.back();
    for (int v : constraints[c].unknowns) mentions[v].push_back(c);
  }

  for (int step = 0; step < nc; ++step) {
    int best = -1;
    for (int c = 0; c < nc; ++c) {
      if (done[c]) continue;
      if (best < 0 || fresh[c] < fresh[best] ||
          (fresh[c] == fresh[best] && max_fresh[c] < max_fresh[best]))
        best = c;
    }
    done[best] = 1;
    if (fresh[best] > 0 || plan.groups.empty()) {
      std::vector<int> vs;
      for (int v : constraints[best].unknowns)
        if (!known[v]) vs.push_back(v);
      plan.groups.push_back({});
      plan.group_vars.push_back(vs);
      for (int v : vs) {
        known[v] = 1;
        for (int c : mentions[v]) {
          --fresh[c];
          if (fresh[c] == 0) {
            max_fresh[c] = -1;
          } else {
            int mx = -1;
            for (int u : constraints[c].unknowns)
              if (!known[u]) mx = std::max(mx, u);
            max_fresh[c] = mx;
          }
        }
      }
    }
    plan.groups.back().push_back(best);
  }

  std::vector<int> rest;
  for (int v = 0; v < num_vars; ++v)
    if (!known[v]) rest.push_back(v);
  if (!rest.empty()) {
    plan.groups.push_back({});
    plan.group_vars.push_back(std::move(rest));
  }
  plan.constraints = std::move(constraints);
  return plan;
}

}  // namespace fusion::search
