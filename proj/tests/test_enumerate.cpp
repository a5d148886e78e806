#include <gtest/gtest.h>

#include <filesystem>
#include <functional>
#include <set>

#include "fusion/fusion.hpp"
#include "oracle.hpp"
#include "rings.hpp"

using namespace fusion;
using namespace fusion::search;
using testing_oracle::all_dual_maps;
using testing_oracle::oracle_classes;

namespace {

/// Pivotal orbits of triples (a,b,c) with a,b,c >= 2, by breadth-first closure.
int orbit_count(int r, const std::vector<int>& dual) {
  std::set<std::array<int, 3>> seen;
  int orbits = 0;
  const auto bar = [&](int a) { return dual[a - 1]; };
  for (int a = 2; a <= r; ++a)
    for (int b = 2; b <= r; ++b)
      for (int c = 2; c <= r; ++c) {
        if (seen.count({a, b, c})) continue;
        ++orbits;
        std::vector<std::array<int, 3>> queue{{a, b, c}};
        seen.insert({a, b, c});
        for (std::size_t q = 0; q < queue.size(); ++q) {
          const auto [x, y, z] = queue[q];
          for (std::array<int, 3> t : {std::array<int, 3>{bar(x), z, y}, {z, bar(y), x}, {y, bar(z), bar(x)},
                                       {bar(z), x, bar(y)}, {bar(y), bar(x), bar(z)}})
            if (seen.insert(t).second) queue.push_back(t);
        }
      }
  return orbits;
}

std::vector<std::vector<int>> codes(const std::vector<FusionRing>& rings) {
  std::vector<std::vector<int>> out;
  for (const auto& R : rings) out.push_back(canonical_form(R).digits);
  return out;
}

}  // namespace

TEST(Oracle, EnumerationMatchesBruteForce) {
  for (int m = 1; m <= 2; ++m)
    for (int r = 1; r <= 4; ++r) {
      const auto res = enumerate_rings(r, m);
      EXPECT_EQ(res.rejected, 0u);
      std::set<std::vector<int>> got;
      for (const auto& R : res.rings) {
        EXPECT_TRUE(is_valid(R));
        EXPECT_LE(R.multiplicity(), m);
        got.insert(testing_rings::brute_key(R));
      }
      EXPECT_EQ(got.size(), res.rings.size()) << "duplicate classes at r=" << r << " m=" << m;
      EXPECT_EQ(got, oracle_classes(r, m)) << "r=" << r << " m=" << m;
    }
}

TEST(Oracle, DualMapsOfRankFour) { EXPECT_EQ(all_dual_maps(4).size(), 4u); }

TEST(Variables, CountsMatchOrbitEnumeration) {
  for (int r = 1; r <= 7; ++r)
    for (int s : self_dual_counts(r)) {
      const auto vs = reduced_variables(r, 2, s);
      EXPECT_EQ(vs.size(), orbit_count(r, layout_dual(r, s))) << "r=" << r << " s=" << s;
    }
  EXPECT_EQ(reduced_variables(2, 1, 2).size(), 1);
  EXPECT_NE(orbit_count(3, layout_dual(3, 3)), orbit_count(3, layout_dual(3, 1)));
}

TEST(Variables, ExpandSatisfiesPivotalIdentities) {
  const auto vs = reduced_variables(5, 3, 3);
  std::vector<int> values(vs.size());
  for (int i = 0; i < vs.size(); ++i) values[i] = (i * 7 + 3) % 4;
  const FusionRing R(5, vs.dual(), vs.expand(values));
  for (int a = 1; a <= 5; ++a)
    for (int b = 1; b <= 5; ++b)
      for (int c = 1; c <= 5; ++c)
        for (const auto& t : fusion::detail::pivotal_images(R, a, b, c)) EXPECT_EQ(R.n(t[0], t[1], t[2]), R.n(a, b, c));
}

TEST(Variables, InconsistentLayoutRejected) {
  EXPECT_THROW(reduced_variables(4, 1, 3), std::invalid_argument);
  EXPECT_THROW(reduced_variables(3, 1, 0), std::invalid_argument);
}

TEST(SearchSpace, Formula) {
  EXPECT_EQ(search_space_size(2, 1, 2), 2);
  for (int r = 2; r <= 5; ++r)
    for (int s : self_dual_counts(r)) {
      EXPECT_EQ(search_space_size(r, 2, s), boost::multiprecision::pow(boost::multiprecision::cpp_int(3),
                                                                        reduced_variables(r, 2, s).size()));
      EXPECT_LE(search_space_size(r, 1, s), search_space_size(r, 2, s));
    }
  for (int r = 3; r <= 6; ++r) EXPECT_LT(search_space_size(r - 1, 1, r - 1), search_space_size(r, 1, r));
}

TEST(Constraints, FibonacciSatisfiesAssociativity) {
  const auto vs = reduced_variables(2, 1, 2);
  const auto cs = associativity_constraints(vs);
  std::vector<int> slots = {1, 0, 1};  // N_{22}^2 = 1, then the constant slots
  for (const auto& c : cs) EXPECT_TRUE(c.satisfied(slots));
  EXPECT_TRUE(symmetry_constraints(vs).empty());
}

TEST(Constraints, SymmetryBreakingRemovesRelabeledDuplicates) {
  // Without the ordering constraints the s=3 search returns relabelings of
  // the same ring; with them fewer raw solutions reach the end, but the same
  // classes.
  const auto vs = reduced_variables(3, 1, 3);
  auto plain = plan_search(associativity_constraints(vs), vs.size());
  auto all = associativity_constraints(vs);
  for (auto& c : symmetry_constraints(vs)) all.push_back(c);
  auto broken = plan_search(all, vs.size());
  const auto a = backtrack(plain, 1), b = backtrack(broken, 1);
  EXPECT_LT(b.size(), a.size());
  std::set<std::vector<int>> ka, kb;
  for (const auto& v : a) ka.insert(testing_rings::brute_key(FusionRing(3, vs.dual(), vs.expand(v))));
  for (const auto& v : b) kb.insert(testing_rings::brute_key(FusionRing(3, vs.dual(), vs.expand(v))));
  EXPECT_EQ(ka, kb);
}

TEST(Plan, ToySystemMatchesExhaustiveScan) {
  // Three equations in four 0/1 unknowns x0..x3; slots 4 and 5 hold 0 and 1.
  const int nv = 4, one = 5;
  std::vector<Constraint> cs(3);
  cs[0].terms = {{1, 0, 1}, {-1, 2, one}};  // x0 x1 = x2
  cs[0].unknowns = {0, 1, 2};
  cs[1].terms = {{1, 2, one}, {1, 3, one}, {-1, one, one}};  // x2 + x3 = 1
  cs[1].unknowns = {2, 3};
  cs[2].terms = {{1, 1, 3}, {-1, 0, 3}};  // x1 x3 = x0 x3
  cs[2].unknowns = {0, 1, 3};
  const SearchPlan plan = plan_search(cs, nv);
  // The two-unknown equation comes first.
  EXPECT_EQ(plan.groups[0], std::vector<int>{1});
  std::set<int> known;
  for (std::size_t i = 0; i < plan.groups.size(); ++i) {
    for (int v : plan.group_vars[i]) known.insert(v);
    for (int c : plan.groups[i])
      for (int u : plan.constraints[c].unknowns) EXPECT_TRUE(known.count(u));
  }
  EXPECT_EQ(known.size(), 4u);

  std::set<std::vector<int>> expected;
  for (int mask = 0; mask < 16; ++mask) {
    std::vector<int> v = {mask & 1, mask >> 1 & 1, mask >> 2 & 1, mask >> 3 & 1, 0, 1};
    bool ok = true;
    for (const auto& c : cs) ok = ok && c.satisfied(v);
    if (ok) expected.insert({v[0], v[1], v[2], v[3]});
  }
  std::set<std::vector<int>> got;
  for (const auto& v : backtrack(plan, 1)) got.insert(std::vector<int>(v.begin(), v.begin() + 4));
  EXPECT_EQ(got, expected);
  EXPECT_FALSE(expected.empty());
}

TEST(Plan, GroupsOnlyMentionEarlierVariables) {
  for (auto [r, s] : {std::pair{4, 4}, std::pair{5, 3}, std::pair{6, 2}}) {
    const auto cs = compile_search(r, 1, s);
    std::set<int> known;
    std::size_t total = 0;
    for (std::size_t i = 0; i < cs.plan.groups.size(); ++i) {
      for (int v : cs.plan.group_vars[i]) EXPECT_TRUE(known.insert(v).second);
      total += cs.plan.group_vars[i].size();
      for (int c : cs.plan.groups[i])
        for (int u : cs.plan.constraints[c].unknowns) EXPECT_TRUE(known.count(u));
    }
    EXPECT_EQ(static_cast<int>(total), cs.variables.size());
  }
}

TEST(Backtrack, RankTwo) {
  EXPECT_EQ(backtrack(compile_search(2, 1, 2).plan, 1).size(), 2u);
  EXPECT_EQ(backtrack(compile_search(2, 3, 2).plan, 3).size(), 4u);
}

TEST(Enumerate, SmallCounts) {
  for (int m = 1; m <= 5; ++m) EXPECT_EQ(enumerate_rings(1, m).rings.size(), 1u);
  EXPECT_EQ(enumerate_rings(2, 1).rings.size(), 2u);
  EXPECT_EQ(enumerate_rings(4, 1).rings.size(), 10u);
  EXPECT_THROW(enumerate_rings(0, 1), std::invalid_argument);
  EXPECT_THROW(enumerate_rings(2, 0), std::invalid_argument);
}

TEST(Enumerate, MonotoneInMultiplicity) {
  for (int r = 2; r <= 4; ++r) {
    std::size_t prev = 0;
    for (int m = 1; m <= 3; ++m) {
      const auto res = enumerate_rings(r, m);
      EXPECT_GE(res.rings.size(), prev);
      prev = res.rings.size();
      std::size_t below = 0;
      for (std::size_t i = 0; i < res.rings.size(); ++i) {
        EXPECT_EQ(static_cast<bool>(res.below_multiplicity[i]), res.rings[i].multiplicity() < m);
        below += res.below_multiplicity[i];
      }
      if (m > 1) EXPECT_EQ(below, enumerate_rings(r, m - 1).rings.size());
    }
  }
}

TEST(Enumerate, DeterministicAcrossThreadCounts) {
  const auto one = enumerate_rings(6, 1);
  for (int t : {2, 3, 8}) {
    EnumerateOptions opt;
    opt.threads = t;
    const auto many = enumerate_rings(6, 1, opt);
    EXPECT_EQ(codes(many.rings), codes(one.rings));
    EXPECT_EQ(catalog_to_json(many.rings).dump(), catalog_to_json(one.rings).dump());
    EXPECT_EQ(many.raw_count, one.raw_count);
  }
}

TEST(Enumerate, CheckpointResumeGivesSameCatalog) {
  const auto full = enumerate_rings(5, 2);
  const std::string path = ::testing::TempDir() + "/enum.ckpt";
  std::optional<Checkpoint> cp;
  std::vector<FusionRing> found;
  int rounds = 0;
  for (;;) {
    EnumerateOptions opt;
    opt.node_budget = full.nodes / 7 + 1;
    if (cp) {
      // Go through the file format each time.
      save_checkpoint(path, *cp, found);
      opt.resume = load_checkpoint(path, &opt.resume_rings);
    }
    const auto part = enumerate_rings(5, 2, opt);
    ++rounds;
    if (part.complete) {
      EXPECT_EQ(codes(part.rings), codes(full.rings));
      break;
    }
    ASSERT_TRUE(part.checkpoint.has_value());
    cp = part.checkpoint;
    found = part.rings;
    ASSERT_LT(rounds, 100);
  }
  EXPECT_GT(rounds, 2);
  std::filesystem::remove(path);
  std::filesystem::remove(partial_path(path));
}

TEST(Enumerate, CheckpointTextRoundTrip) {
  Checkpoint cp{6, 2, 4, 0x1234abcdull, {3, {0, 2, 1, 1}}};
  const Checkpoint back = checkpoint_from_string(checkpoint_to_string(cp));
  EXPECT_EQ(back.rank, 6);
  EXPECT_EQ(back.multiplicity, 2);
  EXPECT_EQ(back.self_dual, 4);
  EXPECT_EQ(back.plan_hash, cp.plan_hash);
  EXPECT_EQ(back.state.depth, 3);
  EXPECT_EQ(back.state.values, cp.state.values);
  EXPECT_THROW(checkpoint_from_string("garbage"), io_error);
  EnumerateOptions opt;
  opt.resume = cp;
  EXPECT_THROW(enumerate_rings(5, 2, opt), std::invalid_argument);
  opt.resume->rank = 5;
  opt.resume->self_dual = 5;
  EXPECT_THROW(enumerate_rings(5, 2, opt), std::invalid_argument);  // plan hash mismatch
  opt.resume->self_dual = 4;
  EXPECT_THROW(enumerate_rings(5, 2, opt), std::invalid_argument);  // parity
}
