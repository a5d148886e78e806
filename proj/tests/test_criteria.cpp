#include <gtest/gtest.h>

#include <algorithm>

#include "fusion/fusion.hpp"
#include "rings.hpp"

using namespace fusion;
using testing_rings::fibonacci;

namespace {

std::vector<FiniteGroup> groups_up_to_8() {
  std::vector<FiniteGroup> gs;
  for (int n = 1; n <= 8; ++n) gs.push_back(cyclic_group(n));
  gs.push_back(named_group("Z2xZ2"));
  gs.push_back(dihedral_group(3));
  gs.push_back(direct_product(cyclic_group(2), cyclic_group(4)));
  gs.push_back(direct_product(named_group("Z2xZ2"), cyclic_group(2)));
  gs.push_back(dihedral_group(4));
  gs.push_back(quaternion_group());
  return gs;
}

std::vector<FusionRing> sample_rings() {
  std::vector<FusionRing> out;
  for (int r = 1; r <= 5; ++r)
    for (const auto& R : search::enumerate_rings(r, 1).rings) out.push_back(R);
  for (int r = 2; r <= 4; ++r)
    for (const auto& R : search::enumerate_rings(r, 2).exact()) out.push_back(R);
  return out;
}

std::vector<Real> all_schur_sums(const CharacterTable& chars) {
  PrecisionGuard guard(chars.digits);
  std::vector<Real> out;
  for (int a = 0; a < chars.rank; ++a)
    for (int b = a; b < chars.rank; ++b)
      for (int c = b; c < chars.rank; ++c) out.push_back(schur_sum(chars, a, b, c).re);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(ZeroSpectrum, GroupRingsAndFibonacciClear) {
  for (const auto& G : groups_up_to_8()) EXPECT_FALSE(zero_spectrum(group_ring(G)).has_value()) << G.name();
  EXPECT_FALSE(zero_spectrum(fibonacci()).has_value());
}

TEST(ZeroSpectrum, FastScanAgreesWithReference) {
  auto rings = sample_rings();
  rings.push_back(testing_rings::hecke_ring());
  for (const auto& R : rings) {
    const auto fast = zero_spectrum(R);
    const auto ref = zero_spectrum_reference(R);
    ASSERT_EQ(fast.has_value(), ref.has_value());
    if (fast) {
      EXPECT_EQ(fast->indices, ref->indices);
      EXPECT_TRUE(replay(R, *fast));
    }
    const auto threaded = zero_spectrum(R, 3);
    ASSERT_EQ(threaded.has_value(), fast.has_value());
    if (fast) EXPECT_EQ(threaded->indices, fast->indices);
  }
}

TEST(ZeroSpectrum, ObstructedRingReplaysExactly) {
  // Search small rings for a ZSC witness and check the conditions
  // by hand in integers.
  std::optional<std::pair<FusionRing, ObstructionWitness>> hit;
  for (int r = 4; r <= 6 && !hit; ++r)
    for (int m = 1; m <= 2 && !hit; ++m)
      for (const auto& R : search::enumerate_rings(r, m).rings)
        if (auto w = zero_spectrum(R)) {
          hit.emplace(R, *w);
          break;
        }
  if (!hit) GTEST_SKIP() << "no ZSC-obstructed ring at rank <= 6, m <= 2";
  const auto& [R, w] = *hit;
  const auto& i = w.indices;
  ASSERT_EQ(i.size(), 9u);
  auto N = [&](int a, int b, int c) { return R.n(a, b, c); };
  auto bar = [&](int a) { return R.dual(a); };
  const int r = R.rank();
  auto pair = [&](int a, int b, int c, int d) {
    int s = 0;
    for (int k = 1; k <= r; ++k) s += N(a, b, k) * N(c, d, k);
    return s;
  };
  const int i1 = i[0], i2 = i[1], i3 = i[2], i4 = i[3], i5 = i[4], i6 = i[5], i7 = i[6], i8 = i[7], i9 = i[8];
  EXPECT_NE(N(i4, i1, i6), 0);
  EXPECT_NE(N(i5, i4, i2), 0);
  EXPECT_NE(N(i5, i6, i3), 0);
  EXPECT_NE(N(i7, i9, i1), 0);
  EXPECT_NE(N(i2, i7, i8), 0);
  EXPECT_NE(N(i8, i9, i3), 0);
  int triple = 0;
  for (int k = 1; k <= r; ++k) triple += N(i4, i7, k) * N(bar(i5), i8, k) * N(i6, bar(i9), k);
  EXPECT_EQ(triple, 0);
  EXPECT_EQ(N(i2, i1, i3), 1);
  EXPECT_TRUE(pair(i5, i4, i3, bar(i1)) == 1 || pair(i2, bar(i4), i3, bar(i6)) == 1 ||
              pair(bar(i5), i2, i6, bar(i1)) == 1);
  EXPECT_TRUE(pair(i2, i7, i3, bar(i9)) == 1 || pair(i8, bar(i7), i3, bar(i1)) == 1 ||
              pair(bar(i2), i8, i1, bar(i9)) == 1);
}

TEST(SchurProduct, GroupRingsAndFibonacciClear) {
  for (const auto& G : groups_up_to_8()) {
    const FusionRing R = group_ring(G);
    if (!is_commutative(R)) {
      EXPECT_THROW(schur_product(R, character_table(group_ring(cyclic_group(2)))), std::domain_error);
      continue;
    }
    EXPECT_FALSE(schur_product(R, character_table(R)).has_value()) << G.name();
  }
  EXPECT_FALSE(schur_product(fibonacci(), character_table(fibonacci())).has_value());
}

TEST(SchurProduct, OrderedModeSeedAndReplay) {
  int obstructed = 0;
  for (const auto& R : sample_rings()) {
    if (!is_commutative(R)) continue;
    const auto c0 = character_table(R, default_digits, 0);
    const auto c1 = character_table(R, default_digits, 987654321);
    const auto w = schur_product(R, c0);
    const auto w1 = schur_product(R, c1);
    const auto wo = schur_product(R, c0, SchurMode::all_ordered);
    EXPECT_EQ(w.has_value(), w1.has_value());
    EXPECT_EQ(w.has_value(), wo.has_value());
    const auto s0 = all_schur_sums(c0), s1 = all_schur_sums(c1);
    PrecisionGuard guard(c0.digits);
    ASSERT_EQ(s0.size(), s1.size());
    for (std::size_t k = 0; k < s0.size(); ++k) EXPECT_LT(abs(s0[k] - s1[k]), power_of_ten(-30));
    if (w) {
      ++obstructed;
      EXPECT_TRUE(replay(R, *w, &c0));
      EXPECT_TRUE(Real(w->value) < 0);
    }
  }
  EXPECT_GT(obstructed, 0);
}
