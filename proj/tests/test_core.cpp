#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fusion/fusion.hpp"
#include "rings.hpp"

using namespace fusion;
using testing_rings::fibonacci;
using testing_rings::hecke_ring;
using testing_rings::z2;

namespace {

FusionRing ising() { return testing_rings::from_products({{"1", "2", "3"}, {"2", "1", "3"}, {"3", "3", "1+2"}}, {1, 2, 3}); }

std::vector<FusionRing> small_catalog(int r_max, int m) {
  std::vector<FusionRing> out;
  for (int r = 1; r <= r_max; ++r)
    for (const auto& R : search::enumerate_rings(r, m).rings) out.push_back(R);
  return out;
}

/// Random permutation fixing 1 that keeps self-dual labels first and dual
/// pairs adjacent.
std::vector<int> admissible_perm(const FusionRing& R, std::mt19937& rng) {
  const int r = R.rank(), s = R.self_dual_count();
  std::vector<int> sd(s - 1), pairs((r - s) / 2);
  std::iota(sd.begin(), sd.end(), 2);
  std::iota(pairs.begin(), pairs.end(), 0);
  std::shuffle(sd.begin(), sd.end(), rng);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  std::vector<int> perm(r);
  perm[0] = 1;
  for (int i = 0; i < s - 1; ++i) perm[i + 1] = sd[i];
  for (int p = 0; p < (r - s) / 2; ++p) {
    const bool flip = rng() & 1;
    const int x = s + 1 + 2 * p, y = x + 1;
    const int tx = s + 1 + 2 * pairs[p];
    perm[x - 1] = flip ? tx + 1 : tx;
    perm[y - 1] = flip ? tx : tx + 1;
  }
  return perm;
}

}  // namespace

TEST(Validate, GroupAndFibonacciRings) {
  EXPECT_TRUE(validate(z2()).valid);
  const auto rep = validate(fibonacci());
  EXPECT_TRUE(rep.valid);
  EXPECT_TRUE(rep.violations.empty());
  EXPECT_EQ(fibonacci().multiplicity(), 1);
}

TEST(Validate, HeckeRingFromTable) {
  const FusionRing R = hecke_ring();
  EXPECT_TRUE(validate(R).valid);
  EXPECT_FALSE(is_commutative(R));
  EXPECT_EQ(R.multiplicity(), 2);
}

TEST(Validate, BrokenDualityReported) {
  const FusionRing fib = fibonacci();
  std::vector<int> n(fib.tensor().begin(), fib.tensor().end());
  n[(1 * 2 + 1) * 2 + 0] = 0;  // N_{22}^1
  const auto rep = validate(FusionRing(2, {1, 2}, n));
  EXPECT_FALSE(rep.valid);
  bool duality = false;
  for (const auto& v : rep.violations) duality |= v.axiom == Axiom::duality;
  EXPECT_TRUE(duality);
}

TEST(Validate, ShapeMismatchIsStructural) {
  EXPECT_THROW(FusionRing(2, {1, 2}, {1, 0, 0}), structural_error);
  EXPECT_THROW(FusionRing(2, {1}, std::vector<int>(8, 0)), structural_error);
}

TEST(Validate, RandomTensorsFailUnlessPivotal) {
  // Any tensor that passes validation carries equal values on all six pivotal images.
  std::mt19937 rng(7);
  int accepted = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    const int r = 3;
    std::vector<int> dual = {1, 2, 3};
    if (rng() & 1) dual = {1, 3, 2};
    // Unit and duality entries are forced; everything else is random.
    std::vector<int> n(27);
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b)
        for (int c = 0; c < r; ++c) {
          int& x = n[(a * r + b) * r + c];
          if (a == 0) x = b == c;
          else if (b == 0) x = a == c;
          else if (c == 0) x = dual[a] == b + 1;
          else x = rng() % 2;
        }
    FusionRing R(r, dual, n);
    if (!validate(R).valid) continue;
    ++accepted;
    for (int a = 1; a <= r; ++a)
      for (int b = 1; b <= r; ++b)
        for (int c = 1; c <= r; ++c)
          for (const auto& t : detail::pivotal_images(R, a, b, c)) EXPECT_EQ(R.n(t[0], t[1], t[2]), R.n(a, b, c));
  }
  EXPECT_GT(accepted, 0);
}

TEST(FusionMatrices, DualIsTranspose) {
  for (const FusionRing& R : {z2(), fibonacci(), hecke_ring()}) {
    const auto ms = fusion_matrices(R);
    for (int a = 1; a <= R.rank(); ++a) {
      const auto& m = ms[a - 1];
      const auto& md = ms[R.dual(a) - 1];
      for (int b = 0; b < R.rank(); ++b)
        for (int c = 0; c < R.rank(); ++c) {
          EXPECT_EQ(md[b][c], m[c][b]);
          if (a == 1) EXPECT_EQ(m[b][c], b == c);
        }
    }
  }
  EXPECT_EQ(fusion_matrix(fibonacci(), 2), (IntMatrix{{0, 1}, {1, 1}}));
  EXPECT_EQ(fusion_matrix(z2(), 2), (IntMatrix{{0, 1}, {1, 0}}));
}

TEST(Dimensions, KnownValues) {
  const double phi = (1 + std::sqrt(5.0)) / 2;
  const auto fib = fp_dimensions(fibonacci());
  EXPECT_NEAR(fib.d[1], phi, 1e-13);
  EXPECT_NEAR(fib.global, 2 + phi, 1e-13);
  const auto is = fp_dimensions(ising());
  EXPECT_NEAR(is.d[2], std::sqrt(2.0), 1e-13);
  EXPECT_NEAR(is.global, 4, 1e-12);
  const auto z5 = fp_dimensions(group_ring(cyclic_group(5)));
  for (double d : z5.d) EXPECT_NEAR(d, 1, 1e-14);
  EXPECT_NEAR(z5.global, 5, 1e-13);
}

TEST(Dimensions, HighPrecisionEigenvector) {
  PrecisionGuard guard(60);
  for (const FusionRing& R : {fibonacci(), hecke_ring(), ising()}) {
    const auto fp = fp_dimensions<Real>(R, power_of_ten(-50));
    const int r = R.rank();
    for (int a = 1; a <= r; ++a) {
      EXPECT_LT(abs(fp.d[a - 1] - fp.d[R.dual(a) - 1]), power_of_ten(-45));
      for (int b = 1; b <= r; ++b) {
        Real s = 0;
        for (int c = 1; c <= r; ++c) s += R.n(a, b, c) * fp.d[c - 1];
        EXPECT_LT(abs(s - fp.d[a - 1] * fp.d[b - 1]), power_of_ten(-45));
      }
    }
  }
  const auto fib = fp_dimensions<Real>(fibonacci(), power_of_ten(-55));
  EXPECT_LT(abs(fib.d[1] - (1 + sqrt(Real(5))) / 2), power_of_ten(-50));
}

TEST(Commutativity, Basics) {
  EXPECT_TRUE(is_commutative(z2()));
  EXPECT_TRUE(is_commutative(fibonacci()));
  EXPECT_FALSE(is_commutative(hecke_ring()));
}

TEST(Substructure, InvertibleSubgroup) {
  EXPECT_EQ(invertible_subgroup(fibonacci()), (std::vector<int>{1}));
  EXPECT_EQ(invertible_subgroup(hecke_ring()), (std::vector<int>{1}));
  EXPECT_EQ(invertible_subgroup(tambara_yamagami(cyclic_group(3))), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(invertible_subgroup(group_ring(dihedral_group(4))).size(), 8u);
}

TEST(Substructure, InvertibleElementsFormGroup) {
  for (const auto& R : small_catalog(5, 1)) {
    const auto g = invertible_subgroup(R);
    const std::set<int> in(g.begin(), g.end());
    for (int a : g) {
      EXPECT_TRUE(in.count(R.dual(a)));
      for (int b : g) {
        int total = 0, prod = 0;
        for (int c = 1; c <= R.rank(); ++c)
          if (R.n(a, b, c)) total += R.n(a, b, c), prod = c;
        EXPECT_EQ(total, 1);
        EXPECT_TRUE(in.count(prod));
      }
    }
  }
}

TEST(Substructure, SubRings) {
  EXPECT_EQ(sub_fusion_rings(fibonacci()), (std::vector<std::vector<int>>{{1}, {1, 2}}));
  const auto subs = sub_fusion_rings(hecke_ring());
  int fib_like = 0;
  for (const auto& s : subs) {
    EXPECT_TRUE(validate(induced_ring(hecke_ring(), s)).valid);
    if (s.size() == 2) {
      ++fib_like;
      EXPECT_TRUE(equivalent(induced_ring(hecke_ring(), s), fibonacci()).has_value());
    }
  }
  EXPECT_EQ(fib_like, 2);
  EXPECT_NE(std::find(subs.begin(), subs.end(), std::vector<int>{1, 2}), subs.end());
  EXPECT_NE(std::find(subs.begin(), subs.end(), std::vector<int>{1, 3}), subs.end());
}

TEST(Canonical, FibonacciCode) {
  EXPECT_EQ(canonical_form(fibonacci()).digits, (std::vector<int>{1, 0, 0, 1, 0, 1, 1, 1}));
  // Read in the order (a, b) blocks, digits per block are N_{ab}^1 N_{ab}^2.
  const auto rep = canonical_representative(fibonacci());
  EXPECT_EQ(std::vector<int>(rep.tensor().begin(), rep.tensor().end()), (std::vector<int>{1, 0, 0, 1, 0, 1, 1, 1}));
}

TEST(Canonical, InvariantUnderAdmissibleRelabeling) {
  std::mt19937 rng(11);
  for (int m : {1, 2})
    for (const auto& R : small_catalog(4, m)) {
      const auto code = canonical_form(R).digits;
      for (int k = 0; k < 20; ++k) {
        const FusionRing P = permute(R, admissible_perm(R, rng));
        EXPECT_EQ(canonical_form(P).digits, code);
        const auto pi = equivalent(R, P);
        ASSERT_TRUE(pi.has_value());
        const FusionRing Q = permute(R, *pi);
        EXPECT_EQ(Q.duals(), P.duals());
        EXPECT_TRUE(std::equal(Q.tensor().begin(), Q.tensor().end(), P.tensor().begin()));
      }
    }
}

TEST(Canonical, CompleteInvariantAtSmallRank) {
  // Equal code if and only if isomorphic by exhaustive permutation search.
  std::vector<FusionRing> all;
  for (int m : {1, 2})
    for (int r = 1; r <= 4; ++r)
      for (const auto& R : search::enumerate_rings(r, m).exact()) all.push_back(R);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i; j < all.size(); ++j) {
      if (all[i].rank() != all[j].rank()) continue;
      const bool same_code = canonical_form(all[i]).digits == canonical_form(all[j]).digits;
      const bool same_loose = canonical_form(all[i], CanonicalMode::dimension_only).digits ==
                              canonical_form(all[j], CanonicalMode::dimension_only).digits;
      const bool iso = testing_rings::brute_key(all[i]) == testing_rings::brute_key(all[j]);
      EXPECT_EQ(same_code, iso) << i << " " << j;
      EXPECT_EQ(same_loose, iso) << i << " " << j;
      EXPECT_EQ(iso, i == j);
    }
}

TEST(Canonical, Z4VersusZ2xZ2) {
  const FusionRing z4 = group_ring(cyclic_group(4));
  const FusionRing v4 = group_ring(named_group("Z2xZ2"));
  EXPECT_NE(canonical_form(z4).digits, canonical_form(v4).digits);
  EXPECT_FALSE(equivalent(z4, v4).has_value());
  EXPECT_NE(testing_rings::brute_key(z4), testing_rings::brute_key(v4));
  EXPECT_FALSE(equivalent(fibonacci(), z2()).has_value());
}

TEST(DirectProduct, Basics) {
  const FusionRing v4 = direct_product(z2(), z2());
  EXPECT_EQ(v4.rank(), 4);
  EXPECT_TRUE(validate(v4).valid);
  EXPECT_TRUE(equivalent(v4, group_ring(named_group("Z2xZ2"))).has_value());
  const FusionRing fz = direct_product(fibonacci(), z2());
  EXPECT_TRUE(validate(fz).valid);
  EXPECT_EQ(fz.multiplicity(), 1);
  const FusionRing same = direct_product(hecke_ring(), trivial_ring());
  EXPECT_TRUE(std::equal(same.tensor().begin(), same.tensor().end(), hecke_ring().tensor().begin()));
}

TEST(Naming, OrderAndFormat) {
  std::vector<FusionRing> cat = {fibonacci(), z2(), trivial_ring()};
  sort_catalog(cat);
  const auto names = catalog_names(cat);
  EXPECT_EQ(names[0].str(), "FR^{1,0}_1");
  EXPECT_EQ(names[1].str(), "FR^{2,0}_1");
  EXPECT_EQ(names[2].str(), "FR^{2,0}_2");
  // Z2 has fewer non-zero structure constants than Fibonacci.
  EXPECT_TRUE(equivalent(cat[1], z2()).has_value());
  EXPECT_EQ(ring_name(fibonacci(), cat)->str(), "FR^{2,0}_2");
  EXPECT_FALSE(ring_name(hecke_ring(), cat).has_value());
  EXPECT_EQ(ring_name(hecke_ring(), {hecke_ring()})->str(), "FR^{6,2,2}_1");
}

TEST(Io, CatalogRoundTrip) {
  std::vector<FusionRing> cat = small_catalog(4, 2);
  cat.push_back(hecke_ring());
  const auto doc = catalog_to_json(cat);
  const std::string path = ::testing::TempDir() + "/roundtrip.json";
  write_json_file(path, doc);
  const auto back = read_catalog(path);
  ASSERT_EQ(back.size(), cat.size());
  for (std::size_t i = 0; i < cat.size(); ++i) {
    EXPECT_EQ(back[i].duals(), cat[i].duals());
    EXPECT_TRUE(std::equal(back[i].tensor().begin(), back[i].tensor().end(), cat[i].tensor().begin()));
  }
  EXPECT_THROW(read_catalog(::testing::TempDir() + "/does-not-exist.json"), io_error);
}
