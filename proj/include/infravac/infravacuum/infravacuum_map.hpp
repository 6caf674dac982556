// The infravacuum background map: a real-linear symplectic map acting
// diagonally on (shell, xi-channel, low angular mode) coefficients.  The
// contracting branch scales captured channels by b_i, the expanding branch by
// 1/b_i; the full map contracts the conjugation-even part and expands the odd
// part, which keeps the symplectic form exactly.
#pragma once

#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "infravac/fieldspace/field_vector.hpp"

namespace infravac {

// Per-shell data: multiplier b_i in (0, 1], strictly decreasing, and the
// largest angular degree the shell's projection captures (nondecreasing).
struct ShellPolicy {
  std::function<double(int)> multiplier;
  std::function<int(int)> angular_reach;
};

inline ShellPolicy default_shell_policy() {
  return {[](int i) { return 1.0 / i; }, [](int i) { return i; }};
}

class InfravacuumMap {
 public:
  explicit InfravacuumMap(ShellGrid grid, ShellPolicy policy = default_shell_policy())
      : grid_(grid), policy_(std::move(policy)) {
    b_.resize(grid_.n_shells + 1, 1.0);
    reach_.resize(grid_.n_shells + 1, 0);
    for (int i = 1; i <= grid_.n_shells; ++i) {
      b_[i] = policy_.multiplier(i);
      reach_[i] = policy_.angular_reach(i);
      if (!(b_[i] > 0.0 && b_[i] <= 1.0))
        throw std::invalid_argument("InfravacuumMap: multiplier outside (0, 1]");
      if (i > 1 && !(b_[i] < b_[i - 1]))
        throw std::invalid_argument("InfravacuumMap: multipliers must decrease");
      if (reach_[i] < 0 || (i > 1 && reach_[i] < reach_[i - 1]))
        throw std::invalid_argument("InfravacuumMap: angular reach must not shrink");
    }
  }

  const ShellGrid& grid() const { return grid_; }

  // Raw policy values; shell may exceed the grid (used by asymptotic
  // diagnostics that extend the shell formulas past the stored grid).
  double shell_multiplier(int i) const {
    if (i < 1) throw std::out_of_range("InfravacuumMap: shell index < 1");
    const double b = i <= grid_.n_shells ? b_[i] : policy_.multiplier(i);
    if (!(b > 0.0 && b <= 1.0))
      throw std::invalid_argument("InfravacuumMap: multiplier outside (0, 1]");
    return b;
  }
  int shell_reach(int i) const {
    if (i < 1) throw std::out_of_range("InfravacuumMap: shell index < 1");
    return i <= grid_.n_shells ? reach_[i] : policy_.angular_reach(i);
  }

  // b_i on captured channels, 1 elsewhere.
  double multiplier(const ChannelIndex& idx) const {
    if (idx.kind != ChannelKind::xi) return 1.0;
    if (idx.mode.l > reach_[idx.shell]) return 1.0;
    return b_[idx.shell];
  }

  FieldVector apply_t1(const FieldVector& f) const { return scaled(f, false); }
  FieldVector apply_t2(const FieldVector& f) const { return scaled(f, true); }

  FieldVector apply_t(const FieldVector& f) const {
    return apply_t1(gamma_even_part(f)) + apply_t2(gamma_odd_part(f));
  }
  FieldVector apply_t_inverse(const FieldVector& f) const {
    return apply_t2(gamma_even_part(f)) + apply_t1(gamma_odd_part(f));
  }

  std::string multiplier_csv(int lmax) const {
    std::string out = "shell,l,multiplier\n";
    char buf[64];
    for (int i = 1; i <= grid_.n_shells; ++i)
      for (int l = 1; l <= lmax; ++l) {
        const double b = l <= reach_[i] ? b_[i] : 1.0;
        std::snprintf(buf, sizeof buf, "%d,%d,%.17g\n", i, l, b);
        out += buf;
      }
    return out;
  }

 private:
  FieldVector scaled(const FieldVector& f, bool invert) const {
    f.require_same_grid(FieldVector(grid_));
    FieldVector out(grid_);
    for (const auto& [idx, c] : f.coefficients()) {
      const double b = multiplier(idx);
      out.set(idx, invert ? c / b : c * b);
    }
    return out;
  }

  ShellGrid grid_;
  ShellPolicy policy_;
  std::vector<double> b_;
  std::vector<int> reach_;
};

// Random vectors for the certification sweeps.
inline FieldVector random_field_vector(const ShellGrid& grid, int lmax, int entries,
                                       std::mt19937_64& rng) {
  std::uniform_int_distribution<int> shell_d(1, grid.n_shells), l_d(1, lmax),
      flip(0, 1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FieldVector f(grid);
  for (int k = 0; k < entries; ++k) {
    const int l = l_d(rng);
    std::uniform_int_distribution<int> m_d(-l, l);
    f.set({shell_d(rng), flip(rng) ? ChannelKind::xi : ChannelKind::aux,
           AngularMode(l, m_d(rng), flip(rng) ? Pol::plus : Pol::minus)},
          {u(rng), u(rng)});
  }
  return f;
}

struct MapCertification {
  int samples = 0;
  double max_pairing_dev = 0.0;     // |<T1 f, T2 g> - <f, g>|
  double max_roundtrip_dev = 0.0;   // ||T1 T2 f - f||, ||T2 T1 f - f||
  double max_symplectic_dev = 0.0;  // |sigma(T f, T g) - sigma(f, g)|
  double max_inverse_dev = 0.0;     // ||T^{-1} T f - f||, ||T T^{-1} f - f||

  double worst() const {
    return std::max(std::max(max_pairing_dev, max_roundtrip_dev),
                    std::max(max_symplectic_dev, max_inverse_dev));
  }
};

// Verifies the defining identities on random vectors; throws with the
// offending vector serialized if any deviation exceeds tol.
inline MapCertification certify_map_identities(const InfravacuumMap& map, int samples,
                                               double tol, int lmax,
                                               std::mt19937_64& rng) {
  MapCertification rep;
  rep.samples = samples;
  for (int s = 0; s < samples; ++s) {
    const FieldVector f = random_field_vector(map.grid(), lmax, 16, rng);
    const FieldVector g = random_field_vector(map.grid(), lmax, 16, rng);
    const double pairing =
        std::abs(inner_product(map.apply_t1(f), map.apply_t2(g)) - inner_product(f, g));
    const double roundtrip =
        std::max(norm(map.apply_t1(map.apply_t2(f)) - f),
                 norm(map.apply_t2(map.apply_t1(f)) - f));
    const double symplectic =
        std::abs(symplectic_form(map.apply_t(f), map.apply_t(g)) - symplectic_form(f, g));
    const double inverse =
        std::max(norm(map.apply_t_inverse(map.apply_t(f)) - f),
                 norm(map.apply_t(map.apply_t_inverse(f)) - f));
    rep.max_pairing_dev = std::max(rep.max_pairing_dev, pairing);
    rep.max_roundtrip_dev = std::max(rep.max_roundtrip_dev, roundtrip);
    rep.max_symplectic_dev = std::max(rep.max_symplectic_dev, symplectic);
    rep.max_inverse_dev = std::max(rep.max_inverse_dev, inverse);
    if (rep.worst() > tol)
      throw std::runtime_error("map identity certification failed on:\n" + to_text(f));
  }
  return rep;
}

// Largest ||T1 f|| / ||f|| over random conjugation-fixed vectors; the diagonal
// multipliers never exceed 1, so the supremum is 1.
inline double norm_bound_t1(const InfravacuumMap& map, int samples, int lmax,
                            std::mt19937_64& rng) {
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const FieldVector f =
        gamma_even_part(random_field_vector(map.grid(), lmax, 16, rng));
    const double n = norm(f);
    if (n == 0.0) continue;
    worst = std::max(worst, norm(map.apply_t1(f)) / n);
  }
  return worst;
}

// Operator norm of the expanding branch restricted to the first n shells,
// by plain power iteration; the diagonal structure makes convergence
// geometric with ratio (b_n / b_{n-1})^2.
inline double t2_norm_power_iteration(const InfravacuumMap& map, int n_shells,
                                      int lmax, int iterations,
                                      std::mt19937_64& rng) {
  if (n_shells < 1 || n_shells > map.grid().n_shells)
    throw std::invalid_argument("t2_norm_power_iteration: shell truncation");
  std::uniform_real_distribution<double> u(0.1, 1.0);
  FieldVector v(map.grid());
  for (int i = 1; i <= n_shells; ++i)
    for (int l = 1; l <= std::min(i, lmax); ++l)
      for (int m = -l; m <= l; ++m)
        for (Pol p : {Pol::plus, Pol::minus})
          v.set({i, ChannelKind::xi, AngularMode(l, m, p)}, u(rng));
  double estimate = 0.0;
  for (int it = 0; it < iterations; ++it) {
    FieldVector w = map.apply_t2(v);
    estimate = norm(w);
    v = (1.0 / estimate) * w;
  }
  return estimate;
}

struct UnboundednessReport {
  std::vector<double> v_norm_sq;        // ||v_n||^2, grows linearly
  std::vector<double> t_iv_norm_sq;     // ||T(i v_n)||^2, grows superlinearly
  std::vector<double> t_v_norm_sq;      // ||T v_n||^2, stays bounded
  double max_symplectic_identity_dev = 0.0;  // |sigma(Tv, T(iv)) - ||v||^2|
  bool strictly_increasing = true;
};

// Feeds a family of real approximants through the map: the symplectic area
// spanned by (T v, T(i v)) reproduces ||v||^2 exactly even though ||T(i v)||
// escapes every bound.
inline UnboundednessReport unboundedness_witness(
    const InfravacuumMap& map, const std::vector<FieldVector>& approximants) {
  UnboundednessReport rep;
  const std::complex<double> I{0.0, 1.0};
  for (const auto& v : approximants) {
    const FieldVector tv = map.apply_t(v);
    const FieldVector tiv = map.apply_t(I * v);
    rep.v_norm_sq.push_back(norm_sq(v));
    rep.t_v_norm_sq.push_back(norm_sq(tv));
    rep.t_iv_norm_sq.push_back(norm_sq(tiv));
    rep.max_symplectic_identity_dev =
        std::max(rep.max_symplectic_identity_dev,
                 std::abs(symplectic_form(tv, tiv) - norm_sq(v)));
  }
  for (std::size_t k = 1; k < rep.t_iv_norm_sq.size(); ++k)
    if (rep.t_iv_norm_sq[k] <= rep.t_iv_norm_sq[k - 1]) rep.strictly_increasing = false;
  return rep;
}

}  // namespace infravac
