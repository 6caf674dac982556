#pragma once
// Right actions of a finite group on a finite point set, with orbit and
// stabilizer computations.

#include <istream>
#include <ostream>
#include <set>
#include <stdexcept>
#include <vector>

#include "infravac/groups/finite_group.hpp"

namespace infravac::groups {

// Sorted list of element indices forming a subgroup; see the subgroup helpers
// in conjugate.hpp for construction and validation.
using Subgroup = std::vector<int>;

class GroupAction {
public:
  // table[x][g] = x . g; validated as a right action.
  static GroupAction from_table(FiniteGroup group,
                                std::vector<std::vector<int>> table) {
    GroupAction a(std::move(group));
    a.act_ = std::move(table);
    a.validate();
    return a;
  }

  // Text format: first line the number of points, then one line per point
  // with |G| image indices.
  static GroupAction parse(const FiniteGroup& group, std::istream& in) {
    int npts = 0;
    if (!(in >> npts)) throw std::runtime_error("action table: missing size");
    if (npts < 1 || npts > 4096)
      throw std::runtime_error("action table: size out of range");
    std::vector<std::vector<int>> t(npts, std::vector<int>(group.order()));
    for (int x = 0; x < npts; ++x)
      for (int g = 0; g < group.order(); ++g)
        if (!(in >> t[x][g]))
          throw std::runtime_error("action table: truncated");
    return from_table(group, std::move(t));
  }

  void write(std::ostream& out) const {
    out << points() << "\n";
    for (const auto& row : act_) {
      for (std::size_t j = 0; j < row.size(); ++j)
        out << row[j] << (j + 1 == row.size() ? "" : " ");
      out << "\n";
    }
  }

  static GroupAction regular(const FiniteGroup& g) {
    std::vector<std::vector<int>> t(g.order(), std::vector<int>(g.order()));
    for (int x = 0; x < g.order(); ++x)
      for (int a = 0; a < g.order(); ++a) t[x][a] = g.mul(x, a);
    return from_table(g, std::move(t));
  }

  // Action on right cosets H g by right multiplication.
  static GroupAction cosets(const FiniteGroup& g, const Subgroup& h) {
    const int n = g.order();
    std::vector<int> coset_of(n, -1);
    std::vector<int> reps;
    for (int x = 0; x < n; ++x) {
      if (coset_of[x] >= 0) continue;
      const int c = static_cast<int>(reps.size());
      reps.push_back(x);
      for (int s : h) coset_of[g.mul(s, x)] = c;
    }
    std::vector<std::vector<int>> t(reps.size(), std::vector<int>(n));
    for (std::size_t c = 0; c < reps.size(); ++c)
      for (int a = 0; a < n; ++a) t[c][a] = coset_of[g.mul(reps[c], a)];
    return from_table(g, std::move(t));
  }

  static GroupAction disjoint_union(const GroupAction& a,
                                    const GroupAction& b) {
    if (a.group().order() != b.group().order())
      throw std::runtime_error("disjoint_union: group mismatch");
    auto t = a.act_;
    for (const auto& row : b.act_) {
      t.push_back(row);
      for (int& v : t.back()) v += a.points();
    }
    return from_table(a.group(), std::move(t));
  }

  const FiniteGroup& group() const { return group_; }
  int points() const { return static_cast<int>(act_.size()); }
  int apply(int x, int g) const { return act_[x][g]; }

private:
  explicit GroupAction(FiniteGroup g) : group_(std::move(g)) {}

  void validate() {
    const int n = group_.order(), npts = points();
    if (npts < 1) throw std::runtime_error("action: empty point set");
    for (const auto& row : act_) {
      if (static_cast<int>(row.size()) != n)
        throw std::runtime_error("action: row size mismatch");
      for (int v : row)
        if (v < 0 || v >= npts)
          throw std::runtime_error("action: point index out of range");
    }
    const int e = group_.identity();
    for (int x = 0; x < npts; ++x)
      if (act_[x][e] != x) throw std::runtime_error("action: identity moves a point");
    for (int x = 0; x < npts; ++x)
      for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
          if (act_[act_[x][g]][h] != act_[x][group_.mul(g, h)])
            throw std::runtime_error("action: compatibility fails");
  }

  FiniteGroup group_;
  std::vector<std::vector<int>> act_;
};

inline std::vector<int> orbit(const GroupAction& a, int x,
                              const Subgroup& h) {
  std::set<int> seen;
  for (int g : h) seen.insert(a.apply(x, g));
  return {seen.begin(), seen.end()};
}

inline Subgroup stabilizer(const GroupAction& a, int x) {
  Subgroup s;
  for (int g = 0; g < a.group().order(); ++g)
    if (a.apply(x, g) == x) s.push_back(g);
  return s;
}

}  // namespace infravac::groups
