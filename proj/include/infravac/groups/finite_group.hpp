#pragma once
// Finite groups as explicit multiplication tables, plus the bundled catalogue
// of small groups used by the verification campaign.

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace infravac::groups {

// Element indices are 0..n-1; table[a][b] is the product a*b.
class FiniteGroup {
public:
  static constexpr int max_order = 64;

  static FiniteGroup from_table(std::string name,
                                std::vector<std::vector<int>> table) {
    FiniteGroup g;
    g.name_ = std::move(name);
    g.mul_ = std::move(table);
    g.validate();
    return g;
  }

  // Text format: first line the order n, then n lines of n indices.
  // The identity is inferred during validation.
  static FiniteGroup parse(std::istream& in, std::string name = "loaded") {
    int n = 0;
    if (!(in >> n)) throw std::runtime_error("group table: missing order");
    if (n < 1 || n > max_order)
      throw std::runtime_error("group table: order out of range");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (!(in >> t[a][b]))
          throw std::runtime_error("group table: truncated table");
    return from_table(std::move(name), std::move(t));
  }

  void write(std::ostream& out) const {
    out << order() << "\n";
    for (const auto& row : mul_) {
      for (std::size_t j = 0; j < row.size(); ++j)
        out << row[j] << (j + 1 == row.size() ? "" : " ");
      out << "\n";
    }
  }

  int order() const { return static_cast<int>(mul_.size()); }
  int identity() const { return id_; }
  int mul(int a, int b) const { return mul_[a][b]; }
  int inv(int a) const { return inv_[a]; }
  const std::string& name() const { return name_; }

  bool is_abelian() const {
    for (int a = 0; a < order(); ++a)
      for (int b = a + 1; b < order(); ++b)
        if (mul_[a][b] != mul_[b][a]) return false;
    return true;
  }

  int element_order(int a) const {
    int x = a, k = 1;
    while (x != id_) {
      x = mul_[x][a];
      ++k;
    }
    return k;
  }

  std::vector<int> element_order_histogram() const {
    std::vector<int> orders;
    orders.reserve(order());
    for (int a = 0; a < order(); ++a) orders.push_back(element_order(a));
    std::sort(orders.begin(), orders.end());
    return orders;
  }

  std::vector<int> center() const {
    std::vector<int> z;
    for (int a = 0; a < order(); ++a) {
      bool central = true;
      for (int b = 0; b < order() && central; ++b)
        central = mul_[a][b] == mul_[b][a];
      if (central) z.push_back(a);
    }
    return z;
  }

private:
  FiniteGroup() = default;

  void validate() {
    const int n = order();
    if (n < 1 || n > max_order)
      throw std::runtime_error("group: order out of range");
    for (const auto& row : mul_) {
      if (static_cast<int>(row.size()) != n)
        throw std::runtime_error("group: table not square");
      for (int v : row)
        if (v < 0 || v >= n)
          throw std::runtime_error("group: index out of range");
    }
    id_ = -1;
    for (int e = 0; e < n; ++e) {
      bool ok = true;
      for (int a = 0; a < n && ok; ++a)
        ok = mul_[e][a] == a && mul_[a][e] == a;
      if (ok) {
        id_ = e;
        break;
      }
    }
    if (id_ < 0) throw std::runtime_error("group: no identity element");
    inv_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b)
        if (mul_[a][b] == id_ && mul_[b][a] == id_) {
          inv_[a] = b;
          break;
        }
      if (inv_[a] < 0) throw std::runtime_error("group: missing inverse");
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]])
            throw std::runtime_error("group: associativity fails");
  }

  std::string name_;
  std::vector<std::vector<int>> mul_;
  std::vector<int> inv_;
  int id_ = 0;
};

inline FiniteGroup cyclic(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return FiniteGroup::from_table("C" + std::to_string(n), std::move(t));
}

inline FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const int n = g.order(), m = h.order();
  std::vector<std::vector<int>> t(n * m, std::vector<int>(n * m));
  auto idx = [n](int a, int b) { return a + n * b; };
  for (int a1 = 0; a1 < n; ++a1)
    for (int b1 = 0; b1 < m; ++b1)
      for (int a2 = 0; a2 < n; ++a2)
        for (int b2 = 0; b2 < m; ++b2)
          t[idx(a1, b1)][idx(a2, b2)] = idx(g.mul(a1, a2), h.mul(b1, b2));
  return FiniteGroup::from_table(g.name() + "x" + h.name(), std::move(t));
}

// Order 2n: rotations r^i and reflections r^i s with s r s = r^{-1}.
inline FiniteGroup dihedral(int n) {
  const int N = 2 * n;
  std::vector<std::vector<int>> t(N, std::vector<int>(N));
  auto idx = [n](int i, int j) { return i + n * j; };
  auto norm = [n](int i) { return ((i % n) + n) % n; };
  for (int i1 = 0; i1 < n; ++i1)
    for (int j1 = 0; j1 < 2; ++j1)
      for (int i2 = 0; i2 < n; ++i2)
        for (int j2 = 0; j2 < 2; ++j2) {
          const int i = j1 == 0 ? norm(i1 + i2) : norm(i1 - i2);
          t[idx(i1, j1)][idx(i2, j2)] = idx(i, j1 ^ j2);
        }
  return FiniteGroup::from_table("D" + std::to_string(n), std::move(t));
}

// Order 4n: a of order 2n, b^2 = a^n, b a b^{-1} = a^{-1}.
// dicyclic(2) is the quaternion group Q8, dicyclic(4) is Q16.
inline FiniteGroup dicyclic(int n) {
  const int m = 2 * n, N = 4 * n;
  std::vector<std::vector<int>> t(N, std::vector<int>(N));
  auto idx = [m](int i, int j) { return i + m * j; };
  auto norm = [m](int i) { return ((i % m) + m) % m; };
  for (int i1 = 0; i1 < m; ++i1)
    for (int j1 = 0; j1 < 2; ++j1)
      for (int i2 = 0; i2 < m; ++i2)
        for (int j2 = 0; j2 < 2; ++j2) {
          int i = j1 == 0 ? i1 + i2 : i1 - i2;
          int j = j1 ^ j2;
          if (j1 == 1 && j2 == 1) i += n;  // b^2 = a^n
          t[idx(i1, j1)][idx(i2, j2)] = idx(norm(i), j);
        }
  std::string name = N == 8 ? "Q8" : N == 16 ? "Q16" : "Dic" + std::to_string(n);
  return FiniteGroup::from_table(std::move(name), std::move(t));
}

namespace detail {

inline std::vector<std::vector<int>> permutations_of(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> all;
  do {
    all.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return all;
}

inline FiniteGroup permutation_group(std::string name,
                                     std::vector<std::vector<int>> perms) {
  const int n = static_cast<int>(perms.size());
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<int> c(perms[a].size());
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = perms[a][perms[b][i]];
      auto it = std::find(perms.begin(), perms.end(), c);
      if (it == perms.end())
        throw std::runtime_error("permutation set not closed");
      t[a][b] = static_cast<int>(it - perms.begin());
    }
  return FiniteGroup::from_table(std::move(name), std::move(t));
}

inline bool even_permutation(const std::vector<int>& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0;
}

}  // namespace detail

inline FiniteGroup symmetric(int n) {
  if (n < 1 || n > 4) throw std::runtime_error("symmetric: need 1 <= n <= 4");
  return detail::permutation_group("S" + std::to_string(n),
                                   detail::permutations_of(n));
}

inline FiniteGroup alternating4() {
  auto perms = detail::permutations_of(4);
  std::erase_if(perms,
                [](const auto& p) { return !detail::even_permutation(p); });
  return detail::permutation_group("A4", std::move(perms));
}

// Split extension N x| C_h where the generator of C_h acts by the
// automorphism `aut` (a permutation of N's indices with aut^h = id).
inline FiniteGroup cyclic_semidirect(const FiniteGroup& n_grp, int h,
                                     const std::vector<int>& aut,
                                     std::string name) {
  const int n = n_grp.order();
  if (static_cast<int>(aut.size()) != n)
    throw std::runtime_error("semidirect: automorphism size mismatch");
  if (aut[n_grp.identity()] != n_grp.identity())
    throw std::runtime_error("semidirect: automorphism moves identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (aut[n_grp.mul(a, b)] != n_grp.mul(aut[a], aut[b]))
        throw std::runtime_error("semidirect: not an automorphism");
  // Powers of the automorphism, one per element of C_h.
  std::vector<std::vector<int>> pow(h, std::vector<int>(n));
  std::iota(pow[0].begin(), pow[0].end(), 0);
  for (int j = 1; j < h; ++j)
    for (int x = 0; x < n; ++x) pow[j][x] = aut[pow[j - 1][x]];
  {
    std::vector<int> last(n);
    for (int x = 0; x < n; ++x) last[x] = aut[pow[h - 1][x]];
    for (int x = 0; x < n; ++x)
      if (last[x] != x)
        throw std::runtime_error("semidirect: automorphism order does not divide h");
  }
  const int N = n * h;
  std::vector<std::vector<int>> t(N, std::vector<int>(N));
  auto idx = [n](int a, int j) { return a + n * j; };
  for (int a1 = 0; a1 < n; ++a1)
    for (int j1 = 0; j1 < h; ++j1)
      for (int a2 = 0; a2 < n; ++a2)
        for (int j2 = 0; j2 < h; ++j2)
          t[idx(a1, j1)][idx(a2, j2)] =
              idx(n_grp.mul(a1, pow[j1][a2]), (j1 + j2) % h);
  return FiniteGroup::from_table(std::move(name), std::move(t));
}

// C_n x| C_h with the generator acting by x -> k*x (mod n).
inline FiniteGroup cyclic_semidirect(int n, int h, int k, std::string name) {
  std::vector<int> aut(n);
  for (int x = 0; x < n; ++x) aut[x] = (k * x) % n;
  return cyclic_semidirect(cyclic(n), h, aut, std::move(name));
}

// The Pauli group <X, Y, i>: phases {1,i,-1,-i} times {I,X,Y,Z}: the central
// product of D4 and C4, order 16.
inline FiniteGroup pauli_group_16() {
  auto idx = [](int phase, int s) { return 4 * phase + s; };
  // sigma_a sigma_b = i^{ph} sigma_c
  auto pauli_mul = [](int a, int b, int& ph) {
    if (a == 0 || b == 0) {
      ph = 0;
      return a + b;
    }
    if (a == b) {
      ph = 0;
      return 0;
    }
    const int c = 6 - a - b;  // the third one among {1,2,3}
    const bool cyclic_order = (a == 1 && b == 2) || (a == 2 && b == 3) ||
                              (a == 3 && b == 1);
    ph = cyclic_order ? 1 : 3;
    return c;
  };
  std::vector<std::vector<int>> t(16, std::vector<int>(16));
  for (int p1 = 0; p1 < 4; ++p1)
    for (int s1 = 0; s1 < 4; ++s1)
      for (int p2 = 0; p2 < 4; ++p2)
        for (int s2 = 0; s2 < 4; ++s2) {
          int ph = 0;
          const int s = pauli_mul(s1, s2, ph);
          t[idx(p1, s1)][idx(p2, s2)] = idx((p1 + p2 + ph) % 4, s);
        }
  return FiniteGroup::from_table("Pauli16", std::move(t));
}

// Every group of order <= 16 (up to isomorphism), plus S4, D12 and Q8 used by
// the campaign. Q8 and Q16 appear via their dicyclic presentations.
inline std::vector<FiniteGroup> small_group_catalogue() {
  std::vector<FiniteGroup> cat;
  const auto c2 = cyclic(2), c4 = cyclic(4);
  auto named = [](FiniteGroup g, const std::string&) { return g; };
  (void)named;
  cat.push_back(cyclic(1));
  cat.push_back(cyclic(2));
  cat.push_back(cyclic(3));
  cat.push_back(cyclic(4));
  cat.push_back(direct_product(c2, c2));
  cat.push_back(cyclic(5));
  cat.push_back(cyclic(6));
  cat.push_back(dihedral(3));
  cat.push_back(cyclic(7));
  cat.push_back(cyclic(8));
  cat.push_back(direct_product(c4, c2));
  cat.push_back(direct_product(direct_product(c2, c2), c2));
  cat.push_back(dihedral(4));
  cat.push_back(dicyclic(2));  // Q8
  cat.push_back(cyclic(9));
  cat.push_back(direct_product(cyclic(3), cyclic(3)));
  cat.push_back(cyclic(10));
  cat.push_back(dihedral(5));
  cat.push_back(cyclic(11));
  cat.push_back(cyclic(12));
  cat.push_back(direct_product(cyclic(6), c2));
  cat.push_back(dihedral(6));
  cat.push_back(alternating4());
  cat.push_back(dicyclic(3));
  cat.push_back(cyclic(13));
  cat.push_back(cyclic(14));
  cat.push_back(dihedral(7));
  cat.push_back(cyclic(15));
  // Order 16: five abelian, nine non-abelian.
  cat.push_back(cyclic(16));
  cat.push_back(direct_product(cyclic(8), c2));
  cat.push_back(direct_product(c4, c4));
  cat.push_back(direct_product(direct_product(c4, c2), c2));
  cat.push_back(
      direct_product(direct_product(c2, c2), direct_product(c2, c2)));
  cat.push_back(dihedral(8));
  cat.push_back(cyclic_semidirect(8, 2, 3, "SD16"));
  cat.push_back(cyclic_semidirect(8, 2, 5, "M16"));
  cat.push_back(dicyclic(4));  // Q16
  cat.push_back(direct_product(dihedral(4), c2));
  cat.push_back(direct_product(dicyclic(2), c2));
  {  // C4 x| C4, generator acts by inversion
    std::vector<int> inv_aut = {0, 3, 2, 1};
    cat.push_back(cyclic_semidirect(c4, 4, inv_aut, "C4:C4"));
  }
  {  // (C2xC2) x| C4, generator swaps the factors
    const auto klein = direct_product(c2, c2);  // index a + 2b
    std::vector<int> swap_aut = {0, 2, 1, 3};
    cat.push_back(cyclic_semidirect(klein, 4, swap_aut, "(C2xC2):C4"));
  }
  cat.push_back(pauli_group_16());
  // Larger groups exercised by the campaign.
  cat.push_back(symmetric(4));
  cat.push_back(dihedral(12));
  return cat;
}

}  // namespace infravac::groups
