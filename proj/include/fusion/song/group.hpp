#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fusion/ring.hpp"

namespace fusion {

class group_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Finite group given by its multiplication table. Elements are 0..n-1 and
/// element 0 is the identity (label 1 in ring terms).
class FiniteGroup {
 public:
  FiniteGroup() = default;

  int order() const noexcept { return n_; }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  int inv(int a) const { return inv_[a]; }
  const std::vector<int>& table() const noexcept { return table_; }
  const std::string& name() const noexcept { return name_; }
  void set_name(std::string s) { name_ = std::move(s); }

  bool is_abelian() const {
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  int element_order(int a) const {
    int k = 1;
    for (int x = a; x != 0; x = mul(x, a)) ++k;
    return k;
  }

  friend FiniteGroup make_group(std::vector<std::vector<int>> table, std::string name);

 private:
  int n_ = 0;
  std::vector<int> table_;
  std::vector<int> inv_;
  std::string name_;
};

/// Validates a 0-based multiplication table. If the identity is not element
/// 0 it is swapped into place.
inline FiniteGroup make_group(std::vector<std::vector<int>> table, std::string name = {}) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw group_error("closure: empty table");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw group_error("closure: table is not square");
    for (int x : row)
      if (x < 0 || x >= n) throw group_error("closure: entry " + std::to_string(x) + " out of range");
  }
  int e = -1;
  for (int a = 0; a < n && e < 0; ++a) {
    bool ok = true;
    for (int b = 0; b < n && ok; ++b) ok = table[a][b] == b && table[b][a] == b;
    if (ok) e = a;
  }
  if (e < 0) throw group_error("identity: no two-sided identity element");
  if (e != 0) {
    auto relabel = [&](int x) { return x == e ? 0 : x == 0 ? e : x; };
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) t[relabel(a)][relabel(b)] = relabel(table[a][b]);
    table = std::move(t);
  }
  FiniteGroup g;
  g.n_ = n;
  g.name_ = std::move(name);
  g.table_.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : table) g.table_.insert(g.table_.end(), row.begin(), row.end());
  g.inv_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    int found = -1;
    for (int b = 0; b < n; ++b)
      if (table[a][b] == 0 && table[b][a] == 0) {
        found = b;
        break;
      }
    if (found < 0) throw group_error("inverses: element " + std::to_string(a + 1) + " has no inverse");
    g.inv_[a] = found;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw group_error("associativity: fails at (" + std::to_string(a + 1) + "," + std::to_string(b + 1) +
                            "," + std::to_string(c + 1) + ")");
  return g;
}

inline FiniteGroup cyclic_group(int n) {
  if (n < 1) throw group_error("cyclic group order must be positive");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return make_group(std::move(t), "Z" + std::to_string(n));
}

/// Dihedral group of order 2n: element k < n is r^k, element n + k is s r^k.
inline FiniteGroup dihedral_group(int n) {
  if (n < 1) throw group_error("dihedral group parameter must be positive");
  const int N = 2 * n;
  std::vector<std::vector<int>> t(N, std::vector<int>(N));
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y) {
      const int fx = x / n, kx = x % n, fy = y / n, ky = y % n;
      // (s^fx r^kx)(s^fy r^ky) = s^(fx+fy) r^(±kx + ky)
      const int k = ((fy ? -kx : kx) + ky + 2 * n) % n;
      t[x][y] = ((fx + fy) % 2) * n + k;
    }
  return make_group(std::move(t), "D" + std::to_string(n));
}

/// Quaternion group {±1, ±i, ±j, ±k} as 0..7 = 1, -1, i, -i, j, -j, k, -k.
inline FiniteGroup quaternion_group() {
  // unit products for 1, i, j, k with signs
  const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  const int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      const int ux = x / 2, uy = y / 2;
      int s = sign[ux][uy] * (x % 2 ? -1 : 1) * (y % 2 ? -1 : 1);
      t[x][y] = 2 * unit[ux][uy] + (s < 0);
    }
  return make_group(std::move(t), "Q8");
}

/// Element (a, b) is a * |B| + b.
inline FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B) {
  const int na = A.order(), nb = B.order(), n = na * nb;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) t[x][y] = A.mul(x / nb, y / nb) * nb + B.mul(x % nb, y % nb);
  return make_group(std::move(t), A.name() + "x" + B.name());
}

/// Parses Z<n>, Z_<n>, D<n>, D_<n>, Q8, and products joined by 'x'.
inline FiniteGroup named_group(const std::string& spec) {
  auto one = [](std::string s) -> FiniteGroup {
    s.erase(std::remove(s.begin(), s.end(), '_'), s.end());
    if (s == "Q8") return quaternion_group();
    if (s.size() >= 2 && (s[0] == 'Z' || s[0] == 'C' || s[0] == 'D') &&
        std::all_of(s.begin() + 1, s.end(), [](unsigned char c) { return std::isdigit(c); })) {
      const int k = std::stoi(s.substr(1));
      return s[0] == 'D' ? dihedral_group(k) : cyclic_group(k);
    }
    throw group_error("unknown group name '" + s + "'");
  };
  std::size_t start = 0;
  FiniteGroup out;
  bool first = true;
  for (;;) {
    const std::size_t x = spec.find('x', start);
    FiniteGroup g = one(spec.substr(start, x == std::string::npos ? std::string::npos : x - start));
    out = first ? g : direct_product(out, g);
    first = false;
    if (x == std::string::npos) break;
    start = x + 1;
  }
  return out;
}

/// N_{ab}^c = [ab = c], dual = inverse.
inline FusionRing group_ring(const FiniteGroup& G) {
  const int n = G.order();
  std::vector<int> dual(n), t(static_cast<std::size_t>(n) * n * n, 0);
  for (int a = 0; a < n; ++a) {
    dual[a] = G.inv(a) + 1;
    for (int b = 0; b < n; ++b) t[(static_cast<std::size_t>(a) * n + b) * n + G.mul(a, b)] = 1;
  }
  return FusionRing(n, std::move(dual), std::move(t));
}

// --- Subgroups and quotients ------------------------------------------------

inline bool is_subgroup(const FiniteGroup& G, const std::vector<int>& H) {
  std::vector<char> in(G.order(), 0);
  for (int h : H) {
    if (h < 0 || h >= G.order()) return false;
    in[h] = 1;
  }
  if (!in[0]) return false;
  for (int a : H) {
    if (!in[G.inv(a)]) return false;
    for (int b : H)
      if (!in[G.mul(a, b)]) return false;
  }
  return true;
}

inline bool is_normal(const FiniteGroup& G, const std::vector<int>& H) {
  if (!is_subgroup(G, H)) return false;
  std::vector<char> in(G.order(), 0);
  for (int h : H) in[h] = 1;
  for (int g = 0; g < G.order(); ++g)
    for (int h : H)
      if (!in[G.mul(G.mul(g, h), G.inv(g))]) return false;
  return true;
}

/// Subgroup generated by a set of elements, sorted.
inline std::vector<int> generated_subgroup(const FiniteGroup& G, const std::vector<int>& gens) {
  std::vector<char> in(G.order(), 0);
  std::vector<int> out{0};
  in[0] = 1;
  for (std::size_t k = 0; k < out.size(); ++k)
    for (int g : gens) {
      const int y = G.mul(out[k], g);
      if (!in[y]) in[y] = 1, out.push_back(y);
    }
  std::sort(out.begin(), out.end());
  return out;
}

/// Every subgroup, ordered by size then lexicographically.
inline std::vector<std::vector<int>> subgroups(const FiniteGroup& G) {
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> queue{{0}};
  seen.insert({0});
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (int g = 0; g < G.order(); ++g) {
      if (std::binary_search(queue[k].begin(), queue[k].end(), g)) continue;
      auto gens = queue[k];
      gens.push_back(g);
      auto s = generated_subgroup(G, gens);
      if (seen.insert(s).second) queue.push_back(std::move(s));
    }
  std::vector<std::vector<int>> out(seen.begin(), seen.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

inline std::vector<std::vector<int>> normal_subgroups(const FiniteGroup& G) {
  std::vector<std::vector<int>> out;
  for (auto& h : subgroups(G))
    if (is_normal(G, h)) out.push_back(std::move(h));
  return out;
}

/// Left cosets gH, numbered by their smallest element (H itself is coset 0),
/// with the quotient group when H is normal.
struct CosetSpace {
  std::vector<int> coset_of;             // element -> coset index
  std::vector<std::vector<int>> cosets;  // sorted members
  FiniteGroup quotient;                  // valid only for normal H
  int index() const { return static_cast<int>(cosets.size()); }
};

inline CosetSpace coset_space(const FiniteGroup& G, const std::vector<int>& H) {
  if (!is_normal(G, H)) throw group_error("subgroup is not normal");
  CosetSpace cs;
  cs.coset_of.assign(G.order(), -1);
  for (int g = 0; g < G.order(); ++g) {
    if (cs.coset_of[g] >= 0) continue;
    std::vector<int> c;
    for (int h : H) c.push_back(G.mul(g, h));
    std::sort(c.begin(), c.end());
    for (int x : c) cs.coset_of[x] = static_cast<int>(cs.cosets.size());
    cs.cosets.push_back(std::move(c));
  }
  const int k = cs.index();
  std::vector<std::vector<int>> t(k, std::vector<int>(k));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) t[a][b] = cs.coset_of[G.mul(cs.cosets[a][0], cs.cosets[b][0])];
  cs.quotient = make_group(std::move(t));
  return cs;
}

inline bool is_automorphism(const FiniteGroup& G, const std::vector<int>& f) {
  const int n = G.order();
  if (static_cast<int>(f.size()) != n) return false;
  std::vector<char> hit(n, 0);
  for (int x : f) {
    if (x < 0 || x >= n || hit[x]) return false;
    hit[x] = 1;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (f[G.mul(a, b)] != G.mul(f[a], f[b])) return false;
  return true;
}

/// All automorphisms, as image vectors, in lexicographic order. Generator
/// images are chosen among elements of matching order and extended along
/// words; only consistent bijective extensions survive.
inline std::vector<std::vector<int>> automorphisms(const FiniteGroup& G) {
  const int n = G.order();
  std::vector<int> gens;
  std::vector<int> span{0};
  while (static_cast<int>(span.size()) < n) {
    int pick = 0;
    for (int g = 1; g < n; ++g)
      if (!std::binary_search(span.begin(), span.end(), g)) {
        pick = g;
        break;
      }
    gens.push_back(pick);
    span = generated_subgroup(G, gens);
  }
  std::vector<std::vector<int>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (int g = 0; g < n; ++g)
      if (G.element_order(g) == G.element_order(gens[i])) candidates[i].push_back(g);

  std::set<std::vector<int>> out;
  std::vector<int> img(gens.size());
  auto extend = [&] {
    std::vector<int> f(n, -1);
    f[0] = 0;
    std::vector<int> queue{0};
    for (std::size_t k = 0; k < queue.size(); ++k)
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const int y = G.mul(queue[k], gens[i]);
        const int fy = G.mul(f[queue[k]], img[i]);
        if (f[y] < 0) {
          f[y] = fy;
          queue.push_back(y);
        } else if (f[y] != fy) {
          return;
        }
      }
    if (is_automorphism(G, f)) out.insert(std::move(f));
  };
  auto choose = [&](auto&& self, std::size_t i) -> void {
    if (i == gens.size()) return extend();
    for (int c : candidates[i]) {
      img[i] = c;
      self(self, i + 1);
    }
  };
  choose(choose, 0);
  return {out.begin(), out.end()};
}

}  // namespace fusion
