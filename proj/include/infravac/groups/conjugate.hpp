#pragma once
// Relative normalizers of subgroup pairs, conjugate classes of points under a
// background element, and the merging checks built on them.

#include <algorithm>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "infravac/groups/group_action.hpp"

namespace infravac::groups {

inline bool contains(const Subgroup& h, int g) {
  return std::binary_search(h.begin(), h.end(), g);
}

inline bool subset_of(const Subgroup& a, const Subgroup& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool is_subgroup(const FiniteGroup& g, const Subgroup& h) {
  if (h.empty() || !std::is_sorted(h.begin(), h.end())) return false;
  if (!contains(h, g.identity())) return false;
  for (int a : h) {
    if (a < 0 || a >= g.order()) return false;
    if (!contains(h, g.inv(a))) return false;
    for (int b : h)
      if (!contains(h, g.mul(a, b))) return false;
  }
  return true;
}

inline Subgroup subgroup_closure(const FiniteGroup& g,
                                 const std::vector<int>& gens) {
  std::set<int> elems = {g.identity()};
  std::queue<int> work;
  auto push = [&](int x) {
    if (elems.insert(x).second) work.push(x);
  };
  work.push(g.identity());
  for (int x : gens) push(x);
  while (!work.empty()) {
    const int x = work.front();
    work.pop();
    push(g.inv(x));
    for (int y : elems) {
      push(g.mul(x, y));
      push(g.mul(y, x));
    }
  }
  return {elems.begin(), elems.end()};
}

// All subgroups, found by extending each known subgroup with one generator.
inline std::vector<Subgroup> all_subgroups(const FiniteGroup& g) {
  std::set<Subgroup> found;
  std::queue<Subgroup> work;
  const Subgroup trivial = {g.identity()};
  found.insert(trivial);
  work.push(trivial);
  while (!work.empty()) {
    const Subgroup h = work.front();
    work.pop();
    for (int x = 0; x < g.order(); ++x) {
      if (contains(h, x)) continue;
      auto gens = h;
      gens.push_back(x);
      Subgroup bigger = subgroup_closure(g, gens);
      if (found.insert(bigger).second) work.push(std::move(bigger));
    }
  }
  return {found.begin(), found.end()};
}

// a^{-1} H a
inline Subgroup conjugate_subgroup(const FiniteGroup& g, int a,
                                   const Subgroup& h) {
  Subgroup out;
  out.reserve(h.size());
  for (int x : h) out.push_back(g.mul(g.mul(g.inv(a), x), a));
  std::sort(out.begin(), out.end());
  return out;
}

// { g : g s g^{-1} in R for every s in S }.  Requires R <= S as subgroups.
// A semigroup in general; empty whenever R is a proper subgroup of S, and the
// classical normalizer when R = S.
inline std::vector<int> relative_normalizer(const FiniteGroup& g,
                                            const Subgroup& r,
                                            const Subgroup& s) {
  if (!is_subgroup(g, r) || !is_subgroup(g, s))
    throw std::invalid_argument("relative_normalizer: not subgroups");
  if (!subset_of(r, s))
    throw std::invalid_argument("relative_normalizer: R not contained in S");
  std::vector<int> out;
  for (int a = 0; a < g.order(); ++a) {
    bool ok = true;
    for (int x : s) {
      if (!contains(r, g.mul(g.mul(a, x), g.inv(a)))) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(a);
  }
  return out;
}

inline std::vector<int> classical_normalizer(const FiniteGroup& g,
                                             const Subgroup& h) {
  std::vector<int> out;
  for (int a = 0; a < g.order(); ++a) {
    Subgroup c;
    c.reserve(h.size());
    for (int x : h) c.push_back(g.mul(g.mul(a, x), g.inv(a)));
    std::sort(c.begin(), c.end());
    if (c == h) out.push_back(a);
  }
  return out;
}

// A conjugate class of points: the orbit of `representative` under the listed
// subgroup.  Member sets are kept sorted so equality is set equality.
struct ClassDescriptor {
  int representative = -1;
  Subgroup acting;
  std::vector<int> members;

  bool operator==(const ClassDescriptor& o) const {
    return members == o.members;
  }
};

// Definition-level enumeration: collect x0.a.g^{-1} over all g with
// x = x0.a.g.  Empty iff x lies outside the full-group orbit of x0.
inline std::vector<int> conjugate_class_direct(const GroupAction& act, int x,
                                               int x0, int a) {
  const auto& g = act.group();
  const int base = act.apply(x0, a);
  std::set<int> members;
  for (int h = 0; h < g.order(); ++h)
    if (act.apply(base, h) == x) members.insert(act.apply(base, g.inv(h)));
  return {members.begin(), members.end()};
}

// Iterate the class construction: the k-th iterate applies the definition to
// every point of the (k-1)-th result.  k = 1 reproduces the direct class.
inline std::vector<int> iterated_conjugate_class(const GroupAction& act, int x,
                                                 int x0, int a, int times) {
  if (times < 1) throw std::invalid_argument("iterated class: times >= 1");
  std::vector<int> current = {x};
  for (int k = 0; k < times; ++k) {
    std::set<int> next;
    for (int y : current) {
      const auto cls = conjugate_class_direct(act, y, x0, a);
      next.insert(cls.begin(), cls.end());
    }
    current.assign(next.begin(), next.end());
  }
  return current;
}

namespace detail {
inline int transporter(const GroupAction& act, int x0, int x) {
  for (int g = 0; g < act.group().order(); ++g)
    if (act.apply(x0, g) == x) return g;
  throw std::invalid_argument("point not in the reference orbit");
}
}  // namespace detail

// Orbit form of the class of x: the orbit of x0.a.g_x^{-1}.a under
// a^{-1} G_{x0} a, with g_x any transporter from x0 to x.
inline ClassDescriptor conjugate_class_orbit(const GroupAction& act, int x,
                                             int x0, int a) {
  const auto& g = act.group();
  const int gx = detail::transporter(act, x0, x);
  ClassDescriptor d;
  d.acting = conjugate_subgroup(g, a, stabilizer(act, x0));
  d.representative = act.apply(act.apply(act.apply(x0, a), g.inv(gx)), a);
  d.members = orbit(act, d.representative, d.acting);
  return d;
}

// Orbit form of the twice-iterated class: the orbit of x itself under
// a^{-1} G_{x0} a.
inline ClassDescriptor second_conjugate_class_orbit(const GroupAction& act,
                                                    int x, int x0, int a) {
  const auto& g = act.group();
  detail::transporter(act, x0, x);  // same in/out-of-orbit contract
  ClassDescriptor d;
  d.acting = conjugate_subgroup(g, a, stabilizer(act, x0));
  d.representative = x;
  d.members = orbit(act, d.representative, d.acting);
  return d;
}

// For backgrounds a normalizing the stabilizer of x0, point equality,
// equality of classes and equality of second classes are all equivalent.
// Verified for every group element; violations are reported per element.
struct EquivalenceReport {
  int checked = 0;
  std::vector<std::string> violations;
  bool all_hold() const { return violations.empty(); }
};

inline EquivalenceReport check_prop_equivalences(const GroupAction& act,
                                                 int x0, int a) {
  const auto& g = act.group();
  const Subgroup stab = stabilizer(act, x0);
  if (!subset_of(conjugate_subgroup(g, a, stab), stab))
    throw std::invalid_argument(
        "equivalence check: background does not normalize the stabilizer");
  EquivalenceReport rep;
  const auto cls0 = conjugate_class_orbit(act, x0, x0, a).members;
  const auto snd0 = second_conjugate_class_orbit(act, x0, x0, a).members;
  for (int h = 0; h < g.order(); ++h) {
    const int x = act.apply(x0, h);
    const bool fixed = x == x0;
    const bool cls_eq = conjugate_class_orbit(act, x, x0, a).members == cls0;
    const bool snd_eq =
        second_conjugate_class_orbit(act, x, x0, a).members == snd0;
    ++rep.checked;
    if (fixed != cls_eq || fixed != snd_eq)
      rep.violations.push_back("element " + std::to_string(h) + ": fixed=" +
                               std::to_string(fixed) + " class_eq=" +
                               std::to_string(cls_eq) + " second_eq=" +
                               std::to_string(snd_eq));
  }
  return rep;
}

// Merging under a background in the relative normalizer: every S-translate of
// x0 has the same class and the same second class as x0, and every S-orbit is
// contained in the corresponding second class.  Hypothesis failures are
// reported, not thrown, so negative controls can exercise the same path.
struct MergingReport {
  bool r_in_s = false;
  bool r_fixes_x0 = false;
  bool a_in_relative_normalizer = false;
  int checked_translates = 0;
  int checked_orbits = 0;
  std::vector<std::string> violations;
  bool hypotheses_hold() const {
    return r_in_s && r_fixes_x0 && a_in_relative_normalizer;
  }
  bool conclusions_hold() const { return violations.empty(); }
};

inline MergingReport check_merging_theorem(const GroupAction& act, int x0,
                                           const Subgroup& r,
                                           const Subgroup& s, int a) {
  const auto& g = act.group();
  if (!is_subgroup(g, r) || !is_subgroup(g, s))
    throw std::invalid_argument("merging check: not subgroups");
  MergingReport rep;
  rep.r_in_s = subset_of(r, s);
  const Subgroup stab = stabilizer(act, x0);
  rep.r_fixes_x0 = subset_of(r, stab);
  if (rep.r_in_s) {
    const auto n = relative_normalizer(g, r, s);
    rep.a_in_relative_normalizer = contains(n, a);
  }
  const auto cls0 = conjugate_class_direct(act, x0, x0, a);
  const auto snd0 = iterated_conjugate_class(act, x0, x0, a, 2);
  for (int t : s) {
    const int x = act.apply(x0, t);
    ++rep.checked_translates;
    if (conjugate_class_direct(act, x, x0, a) != cls0)
      rep.violations.push_back("class of x0.s differs for s=" +
                               std::to_string(t));
    if (iterated_conjugate_class(act, x, x0, a, 2) != snd0)
      rep.violations.push_back("second class of x0.s differs for s=" +
                               std::to_string(t));
  }
  for (int h = 0; h < g.order(); ++h) {
    const int x = act.apply(x0, h);
    const auto s_orbit = orbit(act, x, s);
    const auto snd = iterated_conjugate_class(act, x, x0, a, 2);
    ++rep.checked_orbits;
    if (!std::includes(snd.begin(), snd.end(), s_orbit.begin(),
                       s_orbit.end()))
      rep.violations.push_back("S-orbit of x0.g not inside second class, g=" +
                               std::to_string(h));
  }
  return rep;
}

}  // namespace infravac::groups
