#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "fusion/canonical.hpp"
#include "fusion/ring.hpp"
#include "fusion/search/backtrack.hpp"
#include "fusion/search/checkpoint.hpp"
#include "fusion/search/plan.hpp"
#include "fusion/search/system.hpp"
#include "fusion/validate.hpp"

namespace fusion::search {

/// Full constraint system and plan for one (r, m, s).
struct CompiledSearch {
  VariableSet variables;
  SearchPlan plan;
};

inline CompiledSearch compile_search(int r, int m, int s) {
  VariableSet vs = reduced_variables(r, m, s);
  auto cs = associativity_constraints(vs);
  auto sym = symmetry_constraints(vs);
  cs.insert(cs.end(), std::make_move_iterator(sym.begin()), std::make_move_iterator(sym.end()));
  const int nv = vs.size();
  return {std::move(vs), plan_search(std::move(cs), nv)};
}

/// Self-dual counts searched for rank r, in run order: r, r-2, ..., >= 1.
inline std::vector<int> self_dual_counts(int r) {
  std::vector<int> out;
  for (int s = r; s >= 1; s -= 2) out.push_back(s);
  return out;
}

struct EnumerateOptions {
  int threads = 1;
  /// Total search nodes allowed before stopping with a checkpoint. A finite
  /// budget runs single-threaded.
  std::uint64_t node_budget = std::numeric_limits<std::uint64_t>::max();
  /// Resume point and the rings found before it.
  std::optional<Checkpoint> resume;
  std::vector<FusionRing> resume_rings;
  /// Called from the calling thread with (s, nodes so far in this s-run).
  std::function<void(int, std::uint64_t)> progress;
  std::uint64_t progress_interval = std::uint64_t{1} << 24;
};

struct SelfDualRun {
  int self_dual = 0;
  int variables = 0;
  std::uint64_t raw = 0;    // assignments reaching the last level
  std::uint64_t nodes = 0;  // values tried
  std::size_t distinct = 0;
  bool complete = true;
};

struct EnumerationResult {
  int rank = 0;
  int multiplicity = 0;
  /// Canonical representatives in naming order.
  std::vector<FusionRing> rings;
  /// below_multiplicity[i]: rings[i] has all structure constants < m.
  std::vector<char> below_multiplicity;
  std::vector<SelfDualRun> runs;
  std::uint64_t raw_count = 0;
  std::uint64_t nodes = 0;
  /// Solutions that failed validation; always zero unless the engine is wrong.
  std::uint64_t rejected = 0;
  bool complete = true;
  std::optional<Checkpoint> checkpoint;

  /// Only rings whose multiplicity is exactly m.
  std::vector<FusionRing> exact() const {
    std::vector<FusionRing> out;
    for (std::size_t i = 0; i < rings.size(); ++i)
      if (!below_multiplicity[i]) out.push_back(rings[i]);
    return out;
  }
};

namespace detail {

class RingCollector {
 public:
  RingCollector(int r, std::vector<int> dual, const VariableSet& vs) : r_(r), dual_(std::move(dual)), vs_(vs) {}

  void add(std::span<const int> values) {
    ++raw;
    FusionRing R(r_, dual_, vs_.expand(values));
    if (!is_valid(R)) {
      ++rejected;
      return;
    }
    found.emplace(canonical_form(R).digits, std::move(R));
  }

  void merge(RingCollector&& other) {
    raw += other.raw;
    rejected += other.rejected;
    found.merge(other.found);
  }

  std::uint64_t raw = 0, rejected = 0;
  std::map<std::vector<int>, FusionRing> found;

 private:
  int r_;
  std::vector<int> dual_;
  const VariableSet& vs_;
};

// Prefix depth giving at least `want` top-level subtrees (or the whole order).
inline int split_depth(const SearchPlan& plan, int bound, int want) {
  const int nv = static_cast<int>(plan.order().size());
  int d = 0;
  std::uint64_t leaves = 1;
  while (d < nv && leaves < static_cast<std::uint64_t>(want)) {
    leaves *= static_cast<std::uint64_t>(bound + 1);
    ++d;
  }
  return d;
}

}  // namespace detail

/// Every fusion ring of rank r with structure constants in 0..m, one
/// canonical representative per isomorphism class. With a node budget the
/// result may be partial: complete == false and checkpoint is set.
inline EnumerationResult enumerate_rings(int r, int m, const EnumerateOptions& opt = {}) {
  if (r < 1 || m < 1) throw std::invalid_argument("rank and multiplicity must be at least 1");
  if (opt.threads < 1) throw std::invalid_argument("thread count must be at least 1");
  if (opt.resume && (opt.resume->rank != r || opt.resume->multiplicity != m))
    throw std::invalid_argument("checkpoint was written for a different (rank, multiplicity)");
  if (opt.resume && (opt.resume->self_dual < 1 || opt.resume->self_dual > r || (r - opt.resume->self_dual) % 2))
    throw std::invalid_argument("checkpoint self-dual count is impossible at this rank");

  EnumerationResult res;
  res.rank = r;
  res.multiplicity = m;
  std::map<std::vector<int>, FusionRing> all;
  for (const FusionRing& R : opt.resume_rings) all.emplace(canonical_form(R).digits, R);
  std::uint64_t budget = opt.node_budget;
  const bool bounded = budget != std::numeric_limits<std::uint64_t>::max();

  for (int s : self_dual_counts(r)) {
    if (opt.resume && s > opt.resume->self_dual) continue;
    CompiledSearch cs = compile_search(r, m, s);
    const std::uint64_t hash = cs.plan.hash();
    SelfDualRun run;
    run.self_dual = s;
    run.variables = cs.variables.size();
    detail::RingCollector col(r, cs.variables.dual(), cs.variables);
    Backtracker bt(cs.plan, m);

    std::optional<SearchState> resume;
    if (opt.resume && s == opt.resume->self_dual) {
      if (opt.resume->plan_hash != hash)
        throw std::invalid_argument("checkpoint plan hash does not match this build");
      resume = opt.resume->state;
    }

    if (opt.threads > 1 && !bounded && !resume) {
      const int depth = detail::split_depth(cs.plan, m, 8 * opt.threads);
      std::vector<std::vector<int>> prefixes;
      SearchOptions pre;
      pre.stop_depth = depth;
      auto top = bt.run(pre, [&](std::span<const int> v) { prefixes.push_back(bt.prefix_of(v, depth)); });
      run.nodes += top.stats.nodes;
      std::vector<detail::RingCollector> parts;
      std::vector<std::uint64_t> part_nodes(prefixes.size(), 0);
      parts.reserve(prefixes.size());
      for (std::size_t i = 0; i < prefixes.size(); ++i) parts.emplace_back(r, cs.variables.dual(), cs.variables);
      std::atomic<std::size_t> next{0};
      auto worker = [&] {
        Backtracker local(cs.plan, m);
        for (std::size_t i; (i = next.fetch_add(1)) < prefixes.size();) {
          SearchOptions o;
          o.prefix = prefixes[i];
          auto out = local.run(o, [&](std::span<const int> v) { parts[i].add(v); });
          part_nodes[i] = out.stats.nodes;
        }
      };
      std::vector<std::thread> pool;
      for (int t = 0; t < opt.threads; ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
      for (std::size_t i = 0; i < prefixes.size(); ++i) {
        col.merge(std::move(parts[i]));
        run.nodes += part_nodes[i];
      }
    } else {
      // Sequential, in chunks so progress can be reported and the budget
      // enforced between chunks.
      for (;;) {
        SearchOptions o;
        o.resume = resume;
        o.node_budget = std::min(budget, opt.progress ? opt.progress_interval : budget);
        auto out = bt.run(o, [&](std::span<const int> v) { col.add(v); });
        run.nodes += out.stats.nodes;
        budget -= out.stats.nodes;
        if (out.finished) break;
        if (opt.progress) opt.progress(s, run.nodes);
        if (budget == 0) {
          run.complete = false;
          res.complete = false;
          res.checkpoint = Checkpoint{r, m, s, hash, out.checkpoint};
          break;
        }
        resume = out.checkpoint;
      }
    }

    run.raw = col.raw;
    run.distinct = col.found.size();
    res.raw_count += col.raw;
    res.nodes += run.nodes;
    res.rejected += col.rejected;
    all.merge(col.found);
    res.runs.push_back(run);
    if (!res.complete) break;
  }

  for (auto& [code, R] : all) res.rings.push_back(canonical_representative(R));
  sort_catalog(res.rings);
  for (const FusionRing& R : res.rings) res.below_multiplicity.push_back(R.multiplicity() < m);
  return res;
}

}  // namespace fusion::search
