#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "fusion/ring.hpp"

namespace fusion {

enum class Axiom { involution, unit, duality, frobenius, pivotal, associativity };

constexpr std::string_view axiom_name(Axiom a) {
  switch (a) {
    case Axiom::involution: return "involution";
    case Axiom::unit: return "unit";
    case Axiom::duality: return "duality";
    case Axiom::frobenius: return "frobenius";
    case Axiom::pivotal: return "pivotal";
    case Axiom::associativity: return "associativity";
  }
  return "?";
}

struct Violation {
  Axiom axiom;
  /// 1-based indices; only the first `arity` entries are meaningful.
  std::array<int, 4> where{};
  int arity = 0;
};

struct ValidationReport {
  bool valid = true;
  std::vector<Violation> violations;  // at most one per axiom, first failure in lex order
};

namespace detail {

/// The six index triples tied together by the pivotal relations.
inline std::array<std::array<int, 3>, 6> pivotal_images(const FusionRing& R, int a, int b, int c) {
  const int da = R.dual(a), db = R.dual(b), dc = R.dual(c);
  return {{{a, b, c}, {da, c, b}, {c, db, a}, {b, dc, da}, {dc, a, db}, {db, da, dc}}};
}

}  // namespace detail

inline ValidationReport validate(const FusionRing& R) {
  ValidationReport rep;
  const int r = R.rank();
  auto fail = [&](Axiom ax, std::array<int, 4> w, int arity) {
    rep.valid = false;
    rep.violations.push_back({ax, w, arity});
  };

  for (int a = 1; a <= r; ++a) {
    if (R.dual(R.dual(a)) != a || (a == 1 && R.dual(1) != 1)) {
      fail(Axiom::involution, {a}, 1);
      break;
    }
  }

  [&] {
    for (int a = 1; a <= r; ++a)
      for (int c = 1; c <= r; ++c) {
        const int want = a == c;
        if (R.n(1, a, c) != want) return fail(Axiom::unit, {1, a, c}, 3);
        if (R.n(a, 1, c) != want) return fail(Axiom::unit, {a, 1, c}, 3);
      }
  }();

  [&] {
    for (int a = 1; a <= r; ++a)
      for (int b = 1; b <= r; ++b)
        if (R.n(a, b, 1) != (b == R.dual(a) ? 1 : 0)) return fail(Axiom::duality, {a, b, 1}, 3);
  }();

  [&] {
    for (int a = 1; a <= r; ++a)
      for (int b = 1; b <= r; ++b)
        for (int c = 1; c <= r; ++c)
          if (R.n(a, b, c) != R.n(R.dual(a), c, b)) return fail(Axiom::frobenius, {a, b, c}, 3);
  }();

  [&] {
    for (int a = 1; a <= r; ++a)
      for (int b = 1; b <= r; ++b)
        for (int c = 1; c <= r; ++c) {
          const int v = R.n(a, b, c);
          for (const auto& t : detail::pivotal_images(R, a, b, c))
            if (R.n(t[0], t[1], t[2]) != v) return fail(Axiom::pivotal, {a, b, c}, 3);
        }
  }();

  [&] {
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b)
        for (int c = 0; c < r; ++c)
          for (int d = 0; d < r; ++d) {
            long lhs = 0, rhs = 0;
            for (int e = 0; e < r; ++e) {
              lhs += static_cast<long>(R.at0(a, b, e)) * R.at0(e, c, d);
              rhs += static_cast<long>(R.at0(b, c, e)) * R.at0(a, e, d);
            }
            if (lhs != rhs) return fail(Axiom::associativity, {a + 1, b + 1, c + 1, d + 1}, 4);
          }
  }();

  return rep;
}

inline bool is_valid(const FusionRing& R) { return validate(R).valid; }

}  // namespace fusion
