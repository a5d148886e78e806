#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fusion/canonical.hpp"
#include "fusion/ring.hpp"
#include "fusion/song/group.hpp"
#include "fusion/substructure.hpp"
#include "fusion/validate.hpp"

namespace fusion {

class song_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// [H ⊴ G]^A_{g~|n}. T is realized as the left cosets G/H; A permutes coset
/// indices of coset_space(G, H). An empty lift means "smallest element of
/// each coset".
struct SongSpec {
  FiniteGroup G;
  std::vector<int> H;
  std::vector<int> A;
  int g_tilde = 0;
  int n = 0;
  std::vector<int> lift;
};

namespace detail {

inline std::string coset_label(const CosetSpace& cs, int c) {
  std::string s = "{";
  for (std::size_t k = 0; k < cs.cosets[c].size(); ++k)
    s += (k ? "," : "") + std::to_string(cs.cosets[c][k] + 1);
  return s + "}";
}

}  // namespace detail

/// Throws song_error naming the first violated condition.
inline CosetSpace check_song_spec(const SongSpec& spec) {
  const FiniteGroup& G = spec.G;
  if (!is_subgroup(G, spec.H)) throw song_error("H is not a subgroup");
  if (!is_normal(G, spec.H)) throw song_error("H is not normal in G");
  CosetSpace cs = coset_space(G, spec.H);
  const FiniteGroup& Q = cs.quotient;
  if (!is_automorphism(Q, spec.A)) throw song_error("A is not an automorphism of G/H");
  if (spec.g_tilde < 0 || spec.g_tilde >= G.order()) throw song_error("g~ is not an element of G");
  if (spec.n < 0) throw song_error("multiplicity n must be non-negative");
  const int gt = spec.g_tilde;
  for (int g = 0; g < G.order(); ++g) {
    const int c = cs.coset_of[g];
    const int want = cs.coset_of[G.mul(G.mul(G.inv(gt), g), gt)];
    if (spec.A[spec.A[c]] != want)
      throw song_error("A^2([g]) != [g~^-1 g g~] on coset " + detail::coset_label(cs, c));
  }
  if (spec.A[cs.coset_of[gt]] != cs.coset_of[gt])
    throw song_error("A([g~]) != [g~] on coset " + detail::coset_label(cs, cs.coset_of[gt]));
  if (!spec.lift.empty()) {
    if (static_cast<int>(spec.lift.size()) != cs.index()) throw song_error("lift has the wrong length");
    for (int c = 0; c < cs.index(); ++c)
      if (spec.lift[c] < 0 || spec.lift[c] >= G.order() || cs.coset_of[spec.lift[c]] != c)
        throw song_error("lift of coset " + detail::coset_label(cs, c) + " is not in the coset");
  }
  return cs;
}

/// Ring on G ⊔ G/H. Labels: group element g is g+1 (unit first), coset c is
/// |G|+c+1 (t_1 = H is |G|+1).
///   g x g' = g g'                 g x t = g.t
///   t x g  = lambda(Phi(t) A([g])) . t_1
///   t x t' = lambda(Phi(t) A(Phi(t'))) g~^-1 sum_{h in H} h + n sum_T t
/// The dual map is read off the finished table.
inline FusionRing song_extension(const SongSpec& spec) {
  const CosetSpace cs = check_song_spec(spec);
  const FiniteGroup& G = spec.G;
  const FiniteGroup& Q = cs.quotient;
  const int ng = G.order(), nt = cs.index(), r = ng + nt;
  std::vector<int> lift = spec.lift;
  if (lift.empty())
    for (const auto& c : cs.cosets) lift.push_back(c.front());

  std::vector<int> t(static_cast<std::size_t>(r) * r * r, 0);
  auto at = [&](int a, int b, int c) -> int& { return t[(static_cast<std::size_t>(a) * r + b) * r + c]; };
  const int gti = G.inv(spec.g_tilde);
  for (int g = 0; g < ng; ++g) {
    for (int h = 0; h < ng; ++h) at(g, h, G.mul(g, h)) = 1;
    for (int c = 0; c < nt; ++c) {
      at(g, ng + c, ng + cs.coset_of[G.mul(g, lift[c])]) = 1;
      // lambda(x) . t_1 is the coset x itself
      at(ng + c, g, ng + Q.mul(c, spec.A[cs.coset_of[g]])) = 1;
    }
  }
  for (int c = 0; c < nt; ++c)
    for (int d = 0; d < nt; ++d) {
      const int x = G.mul(lift[Q.mul(c, spec.A[d])], gti);
      for (int h : spec.H) at(ng + c, ng + d, G.mul(x, h)) += 1;
      for (int e = 0; e < nt; ++e) at(ng + c, ng + d, ng + e) += spec.n;
    }

  std::vector<int> dual(r, 0);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      if (at(a, b, 0) == 1) {
        if (dual[a] != 0) throw song_error("construction produced two duals for element " + std::to_string(a + 1));
        dual[a] = b + 1;
      }
  for (int a = 0; a < r; ++a)
    if (dual[a] == 0) throw song_error("construction produced no dual for element " + std::to_string(a + 1));
  return FusionRing(r, std::move(dual), std::move(t));
}

/// Every (A, g~) admissible for (G, H): A ranges over automorphisms of G/H.
inline std::vector<std::pair<std::vector<int>, int>> admissible_twists(const FiniteGroup& G,
                                                                      const std::vector<int>& H) {
  const CosetSpace cs = coset_space(G, H);
  std::vector<std::pair<std::vector<int>, int>> out;
  for (const auto& A : automorphisms(cs.quotient))
    for (int gt = 0; gt < G.order(); ++gt) {
      bool ok = A[cs.coset_of[gt]] == cs.coset_of[gt];
      for (int g = 0; g < G.order() && ok; ++g)
        ok = A[A[cs.coset_of[g]]] == cs.coset_of[G.mul(G.mul(G.inv(gt), g), gt)];
      if (ok) out.emplace_back(A, gt);
    }
  return out;
}

/// Identity map on the cosets of H.
inline std::vector<int> identity_twist(const FiniteGroup& G, const std::vector<int>& H) {
  std::vector<int> a(coset_space(G, H).index());
  for (int i = 0; i < static_cast<int>(a.size()); ++i) a[i] = i;
  return a;
}

inline std::vector<int> whole_group(const FiniteGroup& G) {
  std::vector<int> h(G.order());
  for (int i = 0; i < G.order(); ++i) h[i] = i;
  return h;
}

/// g x t = t x g = t, t x t = sum_G g + k t.
inline FusionRing near_group(const FiniteGroup& G, int k) {
  if (k < 0) throw song_error("near-group parameter must be non-negative");
  return song_extension({G, whole_group(G), {0}, 0, k, {}});
}

inline FusionRing tambara_yamagami(const FiniteGroup& G) { return near_group(G, 0); }

/// Song with H trivial, A = inversion, g~ = 1.
inline FusionRing haagerup_izumi(const FiniteGroup& G, int n = 1) {
  if (!G.is_abelian()) throw std::domain_error("Haagerup-Izumi ring needs an abelian group");
  const CosetSpace cs = coset_space(G, {0});
  std::vector<int> A(cs.index());
  for (int c = 0; c < cs.index(); ++c) A[c] = cs.coset_of[G.inv(cs.cosets[c][0])];
  return song_extension({G, {0}, std::move(A), 0, n, {}});
}

/// Near-group rings for k = 0..k_max.
inline std::vector<FusionRing> one_particle_extensions(const FiniteGroup& G, int k_max) {
  std::vector<FusionRing> out;
  for (int k = 0; k <= k_max; ++k) out.push_back(near_group(G, k));
  return out;
}

// --- Two-particle extensions ------------------------------------------------

/// Which shape of two-particle extension: G fixes both new elements (2, 3)
/// or acts through an index-2 stabilizer (4, 5); self-dual (2, 4) or a dual
/// pair (3, 5).
struct ExtensionReport {
  int case_tag = 0;
  int a = 0, b = 0, c = 0, d = 0;
  std::vector<std::vector<int>> stabilizers;  // left stabilizer (ring labels) per added element
  std::vector<std::vector<int>> orbits;       // left orbits of added elements
};

struct Extension {
  FusionRing ring;
  ExtensionReport report;
};

namespace detail {

// Left stabilizers and orbits of the elements outside a group part
// {1..ng} of R.
inline void fill_action(const FusionRing& R, int ng, ExtensionReport& rep) {
  const int r = R.rank();
  std::vector<char> seen(r + 1, 0);
  for (int t = ng + 1; t <= r; ++t) {
    std::vector<int> stab, orbit;
    for (int g = 1; g <= ng; ++g)
      if (R.n(g, t, t) == 1) stab.push_back(g);
    rep.stabilizers.push_back(std::move(stab));
    if (seen[t]) continue;
    for (int g = 1; g <= ng; ++g)
      for (int u = ng + 1; u <= r; ++u)
        if (R.n(g, t, u) && !seen[u]) seen[u] = 1, orbit.push_back(u);
    std::sort(orbit.begin(), orbit.end());
    rep.orbits.push_back(std::move(orbit));
  }
}

class TwoParticleBuilder {
 public:
  explicit TwoParticleBuilder(const FiniteGroup& G) : G_(G), ng_(G.order()), r_(ng_ + 2) {}

  // Group part plus the action of G: elements of K fix t1, t2; others swap them.
  std::vector<int> base(const std::vector<char>& in_k) const {
    std::vector<int> t(static_cast<std::size_t>(r_) * r_ * r_, 0);
    for (int g = 0; g < ng_; ++g) {
      for (int h = 0; h < ng_; ++h) t[idx(g, h, G_.mul(g, h))] = 1;
      for (int i = 0; i < 2; ++i) {
        const int u = in_k[g] ? i : 1 - i;
        t[idx(g, ng_ + i, ng_ + u)] = 1;
        t[idx(ng_ + i, g, ng_ + u)] = 1;
      }
    }
    return t;
  }
  // t_i x t_j += coefficient * element
  void add(std::vector<int>& t, int i, int j, int e, int coef) const { t[idx(ng_ + i, ng_ + j, e)] += coef; }
  void add_group(std::vector<int>& t, int i, int j, const std::vector<char>& which, bool member) const {
    for (int g = 0; g < ng_; ++g)
      if (static_cast<bool>(which[g]) == member) add(t, i, j, g, 1);
  }
  int t1() const { return ng_; }
  int t2() const { return ng_ + 1; }
  int rank() const { return r_; }

  std::vector<int> dual(bool pair) const {
    std::vector<int> d(r_);
    for (int g = 0; g < ng_; ++g) d[g] = G_.inv(g) + 1;
    d[ng_] = pair ? ng_ + 2 : ng_ + 1;
    d[ng_ + 1] = pair ? ng_ + 1 : ng_ + 2;
    return d;
  }

 private:
  std::size_t idx(int a, int b, int c) const { return (static_cast<std::size_t>(a) * r_ + b) * r_ + c; }
  const FiniteGroup& G_;
  int ng_, r_;
};

}  // namespace detail

/// Candidate tables of the four two-particle shapes with parameters in
/// 0..bound (and the stated Diophantine side conditions for shapes 2 and 3);
/// only those passing validation are returned, one per isomorphism class
/// within each shape.
inline std::vector<Extension> two_particle_extensions(const FiniteGroup& G, int bound) {
  if (G.order() < 2) throw std::domain_error("two-particle extensions need a non-trivial group");
  const int ng = G.order();
  detail::TwoParticleBuilder B(G);
  std::vector<Extension> out;
  std::map<std::pair<int, std::vector<int>>, bool> seen;
  auto emit = [&](int tag, int a, int b, int c, int d, std::vector<int> t, bool pair) {
    FusionRing R(B.rank(), B.dual(pair), std::move(t));
    if (!is_valid(R)) return;
    auto key = std::make_pair(tag, canonical_form(R).digits);
    if (!seen.emplace(key, true).second) return;
    Extension e{R, {tag, a, b, c, d, {}, {}}};
    detail::fill_action(R, ng, e.report);
    out.push_back(std::move(e));
  };

  const std::vector<char> all(ng, 1);
  for (int a = 0; a <= bound; ++a)
    for (int b = 0; b <= bound; ++b) {
      for (int c = 0; c <= bound; ++c)
        for (int d = 0; d <= bound; ++d) {
          if (b * (b - d) + c * (c - a) != ng) continue;
          auto t = B.base(all);
          B.add_group(t, 0, 0, all, true);
          B.add(t, 0, 0, B.t1(), a), B.add(t, 0, 0, B.t2(), b);
          B.add_group(t, 1, 1, all, true);
          B.add(t, 1, 1, B.t1(), c), B.add(t, 1, 1, B.t2(), d);
          for (auto [i, j] : {std::pair{0, 1}, std::pair{1, 0}}) B.add(t, i, j, B.t1(), b), B.add(t, i, j, B.t2(), c);
          emit(2, a, b, c, d, std::move(t), false);
        }
      if (b * b - a * a == ng) {
        auto t = B.base(all);
        B.add(t, 0, 0, B.t1(), a), B.add(t, 0, 0, B.t2(), b);
        B.add(t, 1, 1, B.t1(), b), B.add(t, 1, 1, B.t2(), a);
        for (auto [i, j] : {std::pair{0, 1}, std::pair{1, 0}}) {
          B.add_group(t, i, j, all, true);
          B.add(t, i, j, B.t1(), a), B.add(t, i, j, B.t2(), a);
        }
        emit(3, a, b, 0, 0, std::move(t), true);
      }
    }

  for (const auto& K : subgroups(G)) {
    if (static_cast<int>(K.size()) * 2 != ng) continue;
    std::vector<char> in_k(ng, 0);
    for (int k : K) in_k[k] = 1;
    for (int a = 0; a <= bound; ++a) {
      for (int b = 0; b <= bound; ++b) {
        auto t = B.base(in_k);
        for (int i = 0; i < 2; ++i) {
          B.add_group(t, i, i, in_k, true);
          B.add(t, i, i, B.t1(), a), B.add(t, i, i, B.t2(), b);
          B.add_group(t, i, 1 - i, in_k, false);
          B.add(t, i, 1 - i, B.t1(), b), B.add(t, i, 1 - i, B.t2(), a);
        }
        emit(4, a, b, 0, 0, std::move(t), false);
      }
      auto t = B.base(in_k);
      for (int i = 0; i < 2; ++i) {
        B.add_group(t, i, i, in_k, false);
        B.add(t, i, i, B.t1(), a), B.add(t, i, i, B.t2(), a);
        B.add_group(t, i, 1 - i, in_k, true);
        B.add(t, i, 1 - i, B.t1(), a), B.add(t, i, 1 - i, B.t2(), a);
      }
      emit(5, a, 0, 0, 0, std::move(t), true);
    }
  }
  return out;
}

// --- Stabilizer identities --------------------------------------------------

struct StabilizerCheck {
  /// |G^r_tau ∩ G^l_a| = sum_d (N_{tau a}^d)^2 - sum_t N_{tau t}^tau N_{t a}^a for
  /// every tau in T and a in R.
  bool identity = true;
  /// The same with the left stabilizer G^l_tau on the left-hand side.
  bool left_form = true;
  /// The |G^l_a| <= |T| m^2 bound wherever some tau has G^l_tau = G.
  bool bound = true;
  std::optional<std::pair<int, int>> first_failure;  // (tau, a), 1-based
};

/// Checks the stabilizer identities for R with the given group part (ring
/// labels). Throws group_error if the group part is not a subgroup of
/// invertible elements.
inline StabilizerCheck stabilizer_identity_check(const FusionRing& R, const std::vector<int>& group_part) {
  const int r = R.rank();
  std::vector<char> in_g(r + 1, 0);
  for (int g : group_part) {
    if (g < 1 || g > r) throw group_error("group part label out of range");
    in_g[g] = 1;
  }
  if (!in_g[1]) throw group_error("group part must contain the unit");
  for (int g : group_part) {
    int mass = 0;
    for (int c = 1; c <= r; ++c) mass += R.n(g, R.dual(g), c);
    if (mass != 1 || !in_g[R.dual(g)]) throw group_error("group part contains a non-invertible element");
    for (int h : group_part)
      for (int c = 1; c <= r; ++c)
        if (R.n(g, h, c) && !in_g[c]) throw group_error("group part is not closed under fusion");
  }
  std::vector<int> T;
  for (int a = 1; a <= r; ++a)
    if (!in_g[a]) T.push_back(a);

  auto left_stab = [&](int a) {
    std::vector<char> s(r + 1, 0);
    for (int g : group_part) s[g] = R.n(g, a, a) == 1;
    return s;
  };
  auto right_stab = [&](int a) {
    std::vector<char> s(r + 1, 0);
    for (int g : group_part) s[g] = R.n(a, g, a) == 1;
    return s;
  };

  StabilizerCheck out;
  const int m = R.multiplicity();
  for (int tau : T) {
    const auto gl_tau = left_stab(tau), gr_tau = right_stab(tau);
    int gl_tau_size = 0;
    for (int g : group_part) gl_tau_size += gl_tau[g];
    for (int a = 1; a <= r; ++a) {
      const auto gl_a = left_stab(a);
      int rhs = 0;
      for (int d = 1; d <= r; ++d) rhs += R.n(tau, a, d) * R.n(tau, a, d);
      for (int t : T) rhs -= R.n(tau, t, tau) * R.n(t, a, a);
      int lhs_r = 0, lhs_l = 0, gl_a_size = 0;
      for (int g : group_part) {
        lhs_r += gr_tau[g] && gl_a[g];
        lhs_l += gl_tau[g] && gl_a[g];
        gl_a_size += gl_a[g];
      }
      if (lhs_r != rhs) {
        out.identity = false;
        if (!out.first_failure) out.first_failure = {tau, a};
      }
      if (lhs_l != rhs) out.left_form = false;
      if (T.size() >= 2 && gl_tau_size == static_cast<int>(group_part.size()) && !in_g[a] && a != R.dual(tau) &&
          gl_a_size > static_cast<int>(T.size()) * m * m)
        out.bound = false;
    }
  }
  return out;
}

}  // namespace fusion
