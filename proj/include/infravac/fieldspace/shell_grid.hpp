// Dyadic momentum shells and the two-channel orthonormal radial basis per shell.
#pragma once

#include <cmath>
#include <compare>
#include <stdexcept>

namespace infravac {

// Geometric ladder of band edges eps(i) = 2^{1-i} * kappa, i = 1..n_shells+1.
// Shell i is the band [eps(i+1), eps(i)]; shell 1 touches the UV cutoff kappa.
struct ShellGrid {
  double kappa = 1.0;
  int n_shells = 1;

  ShellGrid(double kappa_, int n_shells_) : kappa(kappa_), n_shells(n_shells_) {
    if (!(kappa > 0.0))
      throw std::invalid_argument("ShellGrid: kappa must be positive");
    if (n_shells < 1 || n_shells > 4096)
      throw std::invalid_argument("ShellGrid: shell count out of range");
  }

  double eps(int i) const {
    if (i < 1 || i > n_shells + 1)
      throw std::out_of_range("ShellGrid::eps: band edge index");
    return std::ldexp(kappa, 1 - i);
  }
  double lower(int i) const { return eps(i + 1); }
  double upper(int i) const { return eps(i); }
  bool contains(int i, double r) const { return lower(i) <= r && r <= upper(i); }

  friend bool operator==(const ShellGrid&, const ShellGrid&) = default;
};

enum class ChannelKind { xi, aux };

// ||r^{-3/2}||^2 over any shell with measure r^2 dr: log of the edge ratio.
inline double shell_log() { return std::log(2.0); }

// Closed-form moments on a shell with lower edge h (upper edge 2h), measure r^2 dr,
// for the raw profiles xi = r^{-3/2} and eta = r^{-1/2}:
//   <xi, xi> = ln 2,  <xi, eta> = h,  <eta, eta> = 3 h^2 / 2.
// The aux channel is eta orthogonalized against xi and normalized:
//   ||eta - (h / ln 2) xi||^2 = h^2 (3/2 - 1 / ln 2).
inline double aux_raw_norm_sq(double h) { return h * h * (1.5 - 1.0 / shell_log()); }

// Orthonormal radial basis value at radius r (zero outside the shell).
inline double radial_profile(const ShellGrid& grid, int shell, ChannelKind kind, double r) {
  if (shell < 1 || shell > grid.n_shells)
    throw std::out_of_range("radial_profile: shell index");
  if (!grid.contains(shell, r)) return 0.0;
  const double xi = 1.0 / (r * std::sqrt(r));
  if (kind == ChannelKind::xi) return xi / std::sqrt(shell_log());
  const double h = grid.lower(shell);
  const double raw = 1.0 / std::sqrt(r) - (h / shell_log()) * xi;
  return raw / std::sqrt(aux_raw_norm_sq(h));
}

}  // namespace infravac
