#pragma once
// Velocity-profile fields on the momentum sphere, their transverse harmonic
// expansion, the shell-wise approximants and their images under the scaling
// map, and the convergence / divergence diagnostics built from both.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "infravac/fieldspace/field_vector.hpp"
#include "infravac/fieldspace/shell_grid.hpp"
#include "infravac/harmonics/quadrature.hpp"
#include "infravac/harmonics/sample_fields.hpp"
#include "infravac/harmonics/spherical.hpp"
#include "infravac/harmonics/vector_sh.hpp"
#include "infravac/infravacuum/infravacuum_map.hpp"
#include "infravac/vec3.hpp"

namespace infravac {

// Parameters of the profile phi(khat) = sqrt(alpha) w / (1 - khat.w): a
// velocity vector w strictly inside the unit ball, a coupling alpha and the
// radial cutoff kappa shared with the shell grid.
struct DressingSpec {
  Vec3 w{0.0, 0.0, 0.0};
  double alpha = 0.1;
  double kappa = 1.0;
  double v_max = 0.95;

  DressingSpec(const Vec3& w_, double alpha_, double kappa_,
               double v_max_ = 0.95)
      : w(w_), alpha(alpha_), kappa(kappa_), v_max(v_max_) {
    if (!(alpha > 0.0)) throw std::invalid_argument("dressing: alpha > 0");
    if (!(kappa > 0.0)) throw std::invalid_argument("dressing: kappa > 0");
    if (!(v_max > 0.0 && v_max < 1.0))
      throw std::invalid_argument("dressing: v_max in (0, 1)");
    if (!(norm(w) <= v_max))
      throw std::invalid_argument("dressing: |w| <= v_max required");
  }

  double speed() const { return norm(w); }
};

inline Vec3 dressing_profile(const DressingSpec& spec, const Vec3& khat) {
  const double den = 1.0 - dot(khat, spec.w);
  return (std::sqrt(spec.alpha) / den) * spec.w;
}

inline Vec3c dressing_transverse(const DressingSpec& spec, const Vec3& khat) {
  return harmonics::project_tangent(khat, to_complex(dressing_profile(spec, khat)));
}

namespace detail {

// \int_{-1}^{1} (1-t^2) / (1 - w t)^p dt by Gauss-Legendre; the integrand is
// analytic on [-1, 1] for |w| < 1, so modest orders are already exact to
// machine precision.
inline double axis_integral(double w, int power, int n_nodes = 200) {
  double sum = 0.0;
  for (const auto& node : harmonics::gauss_legendre(n_nodes))
    sum += node.w * (1.0 - node.x * node.x) /
           std::pow(1.0 - w * node.x, static_cast<double>(power));
  return sum;
}

inline double trigamma(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("trigamma: x > 0");
  double acc = 0.0;
  while (x < 25.0) {
    acc += 1.0 / (x * x);
    x += 1.0;
  }
  const double inv = 1.0 / x, inv2 = inv * inv;
  const double series =
      1.0 / 6.0 -
      inv2 * (1.0 / 30.0 -
              inv2 * (1.0 / 42.0 - inv2 * (1.0 / 30.0 - inv2 * 5.0 / 66.0)));
  acc += inv * (1.0 + 0.5 * inv + inv2 * series);
  return acc;
}

}  // namespace detail

// || P_tr phi ||^2 over the sphere: 2 pi alpha w^2 \int (1-t^2)/(1-wt)^2 dt.
inline double transverse_norm_sq_1d(const DressingSpec& spec) {
  const double w = spec.speed();
  if (w == 0.0) return 0.0;
  return 2.0 * std::numbers::pi * spec.alpha * w * w * detail::axis_integral(w, 2);
}

// || phi ||^2 over the sphere in closed form: 4 pi alpha w^2 / (1 - w^2).
inline double full_norm_sq_closed(const DressingSpec& spec) {
  const double w = spec.speed();
  return 4.0 * std::numbers::pi * spec.alpha * w * w / (1.0 - w * w);
}

// Angular smoothness functional <phi, L^2 phi> as the one-dimensional
// integral 2 pi alpha w^2 \int (1-t^2) (d/dt 1/(1-wt))^2 dt.
inline double l2_weighted_1d(const DressingSpec& spec) {
  const double w = spec.speed();
  if (w == 0.0) return 0.0;
  return 2.0 * std::numbers::pi * spec.alpha * w * w * w * w *
         detail::axis_integral(w, 4);
}

struct L2Routes {
  double integral_route = 0.0;  // 1-D quadrature of the derivative form
  double mode_route = 0.0;      // sum_l l(l+1) |u_l|^2 over scalar modes
};

// The same functional two independent ways: the derivative-form integral and
// the degree-weighted energy of the scalar profile 1/(1 - w t) expanded in
// axial harmonics.  |w| < 1 keeps both sides finite.
inline L2Routes angular_l2_weighted(const DressingSpec& spec, int l_cut = 80,
                                    int n_nodes = 200) {
  L2Routes out;
  out.integral_route = l2_weighted_1d(spec);
  const double w = spec.speed();
  if (w == 0.0) return out;
  const auto nodes = harmonics::gauss_legendre(n_nodes);
  std::vector<double> mode(static_cast<std::size_t>(l_cut) + 1, 0.0);
  for (const auto& node : nodes) {
    const harmonics::LegendreTable table(l_cut, node.x);
    const double u = 1.0 / (1.0 - w * node.x);
    for (int l = 0; l <= l_cut; ++l)
      mode[static_cast<std::size_t>(l)] +=
          2.0 * std::numbers::pi * node.w * u * table(l, 0);
  }
  double sum = 0.0;
  for (int l = 1; l <= l_cut; ++l) {
    const double u_l = mode[static_cast<std::size_t>(l)];
    sum += static_cast<double>(l) * (l + 1) * u_l * u_l;
  }
  out.mode_route = spec.alpha * w * w * sum;
  return out;
}

// Transverse expansion of the profile: coefficients, per-degree energies and
// their prefix sums.  Coefficients below prune_rel * max|c| are dropped so
// that exact-support statements survive quadrature roundoff.
struct AngularTable {
  int lmax = 0;
  std::map<harmonics::AngularMode, std::complex<double>> coefficients;
  std::vector<double> degree_energy;  // E_l, index 0..lmax, E_0 = 0
  std::vector<double> head;           // head[L] = sum_{l <= L} E_l
  double total = 0.0;                 // A = head[lmax]
  double field_norm_sq = 0.0;
  double residual_sq = 0.0;
};

inline AngularTable angular_table(const DressingSpec& spec, int lmax,
                                  double prune_rel = 1e-13) {
  if (lmax < 1) throw std::invalid_argument("angular_table: lmax >= 1");
  AngularTable out;
  out.lmax = lmax;
  out.degree_energy.assign(static_cast<std::size_t>(lmax) + 1, 0.0);
  out.head.assign(static_cast<std::size_t>(lmax) + 1, 0.0);
  if (spec.speed() < 1e-15) return out;

  const harmonics::TangentField field{
      [spec](double ct, double phi) {
        return dressing_transverse(spec, unit_from_angles(ct, phi));
      },
      harmonics::Smoothness::analytic};
  const auto quad = harmonics::SphericalQuadrature::build(2 * lmax + 2);
  const auto exp = harmonics::expand_tangent_field(field, lmax, quad);
  out.field_norm_sq = exp.field_norm_sq;
  out.residual_sq = exp.residual_sq;

  double scale = 0.0;
  for (const auto& [mode, c] : exp.coefficients)
    scale = std::max(scale, std::abs(c));
  for (const auto& [mode, c] : exp.coefficients) {
    if (std::abs(c) <= prune_rel * scale) continue;
    out.coefficients.emplace(mode, c);
    out.degree_energy[static_cast<std::size_t>(mode.l)] += std::norm(c);
  }
  double acc = 0.0;
  for (int l = 0; l <= lmax; ++l) {
    acc += out.degree_energy[static_cast<std::size_t>(l)];
    out.head[static_cast<std::size_t>(l)] = acc;
  }
  out.total = acc;
  return out;
}

// Approximant at depth n: the radial profile r^{-3/2} down to the n-th shell
// edge, i.e. sqrt(ln 2) times the angular coefficients on the xi channels of
// shells 1..n-1.  Depth 1 is the zero vector.
inline FieldVector dressing_approximant(const DressingSpec& spec,
                                        const ShellGrid& grid, int n,
                                        const AngularTable& table) {
  if (grid.kappa != spec.kappa)
    throw std::invalid_argument("dressing_approximant: cutoff mismatch");
  if (n < 1 || n > grid.n_shells)
    throw std::out_of_range("dressing_approximant: depth out of range");
  FieldVector v(grid);
  const double amp = std::sqrt(shell_log());
  for (int i = 1; i < n; ++i)
    for (const auto& [mode, c] : table.coefficients)
      v.set({i, ChannelKind::xi, mode}, amp * c);
  return v;
}

// Single-shell slice of the approximant family (shells are disjoint, so the
// slices are mutually orthogonal by construction).
inline FieldVector shell_slice(const DressingSpec& spec, const ShellGrid& grid,
                               int i, const AngularTable& table) {
  if (grid.kappa != spec.kappa)
    throw std::invalid_argument("shell_slice: cutoff mismatch");
  if (i < 1 || i > grid.n_shells)
    throw std::out_of_range("shell_slice: shell out of range");
  FieldVector v(grid);
  const double amp = std::sqrt(shell_log());
  for (const auto& [mode, c] : table.coefficients)
    v.set({i, ChannelKind::xi, mode}, amp * c);
  return v;
}

// Image of one shell slice under the scaling map.
inline FieldVector shell_image(const DressingSpec& spec,
                               const InfravacuumMap& map, int i,
                               const AngularTable& table) {
  return map.apply_t(shell_slice(spec, map.grid(), i, table));
}

// Closed shell-norm law for the image of shell i: the captured degrees
// (l <= reach_i) are scaled by b_i, the rest pass through, so
// ||image_i||^2 = ln 2 * (tail_{l > reach_i} + b_i^2 * head_{l <= reach_i}).
inline double shell_image_norm_sq(const InfravacuumMap& map, int i,
                                  const AngularTable& table) {
  const double b = map.shell_multiplier(i);
  const int reach = std::min(map.shell_reach(i), table.lmax);
  const double head = table.head[static_cast<std::size_t>(std::max(reach, 0))];
  const double tail = table.total - head;
  return shell_log() * (tail + b * b * head);
}

// Same law for the expanding branch, reached by the conjugation-odd input
// i * slice: captured degrees are scaled by 1 / b_i.
inline double shell_odd_image_norm_sq(const InfravacuumMap& map, int i,
                                      const AngularTable& table) {
  const double b = map.shell_multiplier(i);
  const int reach = std::min(map.shell_reach(i), table.lmax);
  const double head = table.head[static_cast<std::size_t>(std::max(reach, 0))];
  const double tail = table.total - head;
  return shell_log() * (tail + head / (b * b));
}

// Everything the campaign needs to certify convergence of the image family
// and divergence of the raw family, with explicit truncation accounting.
struct ConvergenceReport {
  int depth = 0;    // N: deepest approximant studied
  int lmax = 0;     // angular truncation degree
  int horizon = 0;  // shells summed explicitly for the limit
  double tolerance = 0.0;

  double angular_total = 0.0;  // A = truncated transverse energy
  double field_norm_sq = 0.0;

  std::vector<double> shell_norm_sq;  // ||image_i||^2, index 1..horizon
  std::vector<double> v_norm_sq;      // ||v_n||^2, index 1..N
  std::vector<double> t_v_norm_sq;    // ||T v_n||^2, index 1..N
  std::vector<double> t_iv_norm_sq;   // ||T(i v_n)||^2, index 1..N
  std::vector<double> increment;      // t_v[n] - t_v[n-1], index 2..N
  double last_increment = 0.0;

  // Uniform-shape constant: k_shape bounds ||image_i||^2 i^2 / ln 2 over the
  // horizon, k_cauchy bounds n * sum_{i >= n} ||image_i||^2, and k_fit is the
  // smallest constant serving both roles at once.
  double k_shape = 0.0;
  int k_shape_argmax = 0;
  double k_cauchy = 0.0;
  int k_cauchy_argmax = 0;
  double k_fit = 0.0;
  // k_cauchy - ln 2 * (pi^2/6) * k_shape; nonpositive whenever the shell
  // norms really decay like 1/i^2, since n * trigamma(n) is decreasing.
  double cauchy_excess = 0.0;
  bool cauchy_holds = false;  // suffix(n) <= k_fit / n over the horizon

  double limit_estimate = 0.0;    // horizon sum + fitted trigamma tail
  double shell_tail_bound = 0.0;  // the fitted tail beyond the horizon
  double c_uniform_bound = 0.0;   // 2 (<phi, L^2 phi> + 2 ||phi||^2)
  bool shape_within_bound = false;

  // Angular truncation accounting for the limit estimate.
  double geometric_ratio = 0.0;       // q = rho^{-2}, Bernstein parameter
  double angular_tail_estimate = 0.0; // geometric extrapolation beyond lmax
  double angular_tail_markov = 0.0;   // moment bound ln2 * B / (lmax + 1)
  bool lmax_sufficient = false;       // geometric estimate <= tolerance / 10

  // Growth of the raw family and of the conjugation-odd images.
  double linear_slope = 0.0;
  double linear_r2 = 0.0;
  double growth_exponent = 0.0;
  bool superlinear = false;
};

// Ratio of consecutive degree energies for the profile family: the scalar
// generator extends holomorphically to the Bernstein ellipse with parameter
// rho = (1 + sqrt(1 - w^2)) / w, so energies fall like q^l with q = rho^-2.
inline double degree_decay_ratio(double w) {
  if (w <= 0.0) return 0.0;
  const double rho = (1.0 + std::sqrt(1.0 - w * w)) / w;
  return 1.0 / (rho * rho);
}

namespace detail {

// sum_{l > L} (l + 1) E_l under geometric extrapolation E_l = e_star *
// q^(l - l_star):  e_star q^{L+1-l_star} [ (L+2)/(1-q) + q/(1-q)^2 ].
inline double geometric_degree_tail(double e_star, int l_star, int cap_l,
                                    double q) {
  if (e_star <= 0.0 || q <= 0.0) return 0.0;
  if (q >= 1.0) throw std::invalid_argument("degree tail: ratio must be < 1");
  const double lead = e_star * std::pow(q, cap_l + 1 - l_star);
  return lead * ((cap_l + 2) / (1.0 - q) + q / ((1.0 - q) * (1.0 - q)));
}

}  // namespace detail

inline ConvergenceReport convergence_diagnostics(const DressingSpec& spec,
                                                 const InfravacuumMap& map,
                                                 int depth, double tolerance,
                                                 int lmax, int horizon = 4096) {
  if (depth < 2 || depth > map.grid().n_shells)
    throw std::out_of_range("convergence_diagnostics: depth out of range");
  if (horizon < depth)
    throw std::invalid_argument("convergence_diagnostics: horizon < depth");
  if (!(tolerance > 0.0))
    throw std::invalid_argument("convergence_diagnostics: tolerance > 0");

  ConvergenceReport rep;
  rep.depth = depth;
  rep.lmax = lmax;
  rep.horizon = horizon;
  rep.tolerance = tolerance;

  const AngularTable table = angular_table(spec, lmax);
  rep.angular_total = table.total;
  rep.field_norm_sq = table.field_norm_sq;

  // Per-shell image norms over the whole horizon from the closed law.
  rep.shell_norm_sq.assign(static_cast<std::size_t>(horizon) + 1, 0.0);
  for (int i = 1; i <= horizon; ++i)
    rep.shell_norm_sq[static_cast<std::size_t>(i)] =
        shell_image_norm_sq(map, i, table);

  // Depth-indexed families and increments.
  rep.v_norm_sq.assign(static_cast<std::size_t>(depth) + 1, 0.0);
  rep.t_v_norm_sq.assign(static_cast<std::size_t>(depth) + 1, 0.0);
  rep.t_iv_norm_sq.assign(static_cast<std::size_t>(depth) + 1, 0.0);
  rep.increment.assign(static_cast<std::size_t>(depth) + 1, 0.0);
  for (int n = 2; n <= depth; ++n) {
    const std::size_t k = static_cast<std::size_t>(n);
    rep.v_norm_sq[k] = (n - 1) * shell_log() * table.total;
    rep.t_v_norm_sq[k] =
        rep.t_v_norm_sq[k - 1] + rep.shell_norm_sq[static_cast<std::size_t>(n - 1)];
    rep.t_iv_norm_sq[k] =
        rep.t_iv_norm_sq[k - 1] + shell_odd_image_norm_sq(map, n - 1, table);
    rep.increment[k] = rep.shell_norm_sq[static_cast<std::size_t>(n - 1)];
  }
  rep.last_increment = rep.increment[static_cast<std::size_t>(depth)];

  // Tail beyond the horizon, extrapolated with the fitted 1/i^2 shape; exact
  // in-model for the default 1/i policy once reach covers every degree.
  const double c_horizon =
      static_cast<double>(horizon) * horizon *
      rep.shell_norm_sq[static_cast<std::size_t>(horizon)];
  rep.shell_tail_bound = c_horizon * detail::trigamma(horizon + 1.0);
  double explicit_sum = 0.0;
  for (int i = horizon; i >= 1; --i)
    explicit_sum += rep.shell_norm_sq[static_cast<std::size_t>(i)];
  rep.limit_estimate = explicit_sum + rep.shell_tail_bound;

  // Shape constant and Cauchy constant over the horizon.
  double suffix = rep.shell_tail_bound;
  std::vector<double> suffix_at(static_cast<std::size_t>(horizon) + 2, 0.0);
  suffix_at[static_cast<std::size_t>(horizon) + 1] = suffix;
  for (int i = horizon; i >= 1; --i) {
    suffix += rep.shell_norm_sq[static_cast<std::size_t>(i)];
    suffix_at[static_cast<std::size_t>(i)] = suffix;
  }
  for (int i = 1; i <= horizon; ++i) {
    const double shape = rep.shell_norm_sq[static_cast<std::size_t>(i)] *
                         static_cast<double>(i) * i / shell_log();
    if (shape > rep.k_shape) {
      rep.k_shape = shape;
      rep.k_shape_argmax = i;
    }
    const double cauchy = static_cast<double>(i) * suffix_at[static_cast<std::size_t>(i)];
    if (cauchy > rep.k_cauchy) {
      rep.k_cauchy = cauchy;
      rep.k_cauchy_argmax = i;
    }
  }
  rep.k_fit = std::max(rep.k_shape, rep.k_cauchy);
  rep.cauchy_excess =
      rep.k_cauchy -
      shell_log() * (std::numbers::pi * std::numbers::pi / 6.0) * rep.k_shape;
  rep.cauchy_holds = true;
  for (int n = 1; n <= horizon; ++n)
    if (static_cast<double>(n) * suffix_at[static_cast<std::size_t>(n)] >
        rep.k_fit * (1.0 + 1e-12))
      rep.cauchy_holds = false;

  // Analytic shape bound from the smoothness functional.
  rep.c_uniform_bound =
      2.0 * (l2_weighted_1d(spec) + 2.0 * full_norm_sq_closed(spec));
  rep.shape_within_bound = rep.k_shape <= rep.c_uniform_bound * (1.0 + 1e-12);

  // Angular truncation: geometric extrapolation from the last resolved
  // degree, plus the much weaker moment bound for audit.
  rep.geometric_ratio = degree_decay_ratio(spec.speed());
  const double floor = 1e-26 * std::max(table.total, 1e-300);
  int l_star = 0;
  for (int l = 1; l <= lmax; ++l)
    if (table.degree_energy[static_cast<std::size_t>(l)] > floor) l_star = l;
  if (l_star > 0)
    rep.angular_tail_estimate =
        shell_log() *
        detail::geometric_degree_tail(
            table.degree_energy[static_cast<std::size_t>(l_star)], l_star,
            lmax, rep.geometric_ratio);
  rep.angular_tail_markov =
      shell_log() * rep.c_uniform_bound / (lmax + 1.0);
  rep.lmax_sufficient = rep.angular_tail_estimate <= tolerance / 10.0;

  // Least-squares line through (n, ||v_n||^2); exact in-model, so r^2 only
  // dips below 1 through roundoff.
  {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    const int m = depth;
    for (int n = 1; n <= depth; ++n) {
      const double x = n, y = rep.v_norm_sq[static_cast<std::size_t>(n)];
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      syy += y * y;
    }
    const double vx = m * sxx - sx * sx;
    const double vy = m * syy - sy * sy;
    const double cov = m * sxy - sx * sy;
    rep.linear_slope = cov / vx;
    rep.linear_r2 = vy > 0.0 ? cov * cov / (vx * vy) : 1.0;
  }

  // Doubling exponent of the conjugation-odd image norms.
  {
    const int n_hi = depth, n_lo = std::max(3, depth / 2);
    const double hi = rep.t_iv_norm_sq[static_cast<std::size_t>(n_hi)];
    const double lo = rep.t_iv_norm_sq[static_cast<std::size_t>(n_lo)];
    if (hi > 0.0 && lo > 0.0 && n_hi > n_lo) {
      rep.growth_exponent = std::log(hi / lo) /
                            std::log(static_cast<double>(n_hi - 1) / (n_lo - 1));
      rep.superlinear = rep.growth_exponent >= 1.5;
    }
  }
  return rep;
}

struct LmaxChoice {
  int lmax = 1;
  double geometric_ratio = 0.0;
  double tail_estimate = 0.0;   // at the chosen degree
  double markov_bound = 0.0;    // audit value at the chosen degree
  bool capped = false;
};

// Smallest truncation degree whose geometric tail estimate sits below one
// tenth of the requested tolerance; reports the moment bound alongside.
inline LmaxChoice choose_l_max(const DressingSpec& spec, double tolerance,
                               int cap = 64) {
  if (!(tolerance > 0.0))
    throw std::invalid_argument("choose_l_max: tolerance > 0");
  if (cap < 1) throw std::invalid_argument("choose_l_max: cap >= 1");
  LmaxChoice out;
  out.geometric_ratio = degree_decay_ratio(spec.speed());
  const double bound =
      2.0 * (l2_weighted_1d(spec) + 2.0 * full_norm_sq_closed(spec));
  if (spec.speed() < 1e-15) {
    out.lmax = 1;
    out.markov_bound = 0.0;
    return out;
  }
  const AngularTable table = angular_table(spec, cap);
  const double floor = 1e-26 * std::max(table.total, 1e-300);
  for (int cand = 1; cand <= cap; ++cand) {
    int l_star = 0;
    for (int l = 1; l <= cand; ++l)
      if (table.degree_energy[static_cast<std::size_t>(l)] > floor) l_star = l;
    double est = 0.0;
    if (l_star > 0)
      est = shell_log() *
            detail::geometric_degree_tail(
                table.degree_energy[static_cast<std::size_t>(l_star)], l_star,
                cand, out.geometric_ratio);
    out.lmax = cand;
    out.tail_estimate = est;
    out.markov_bound = shell_log() * bound / (cand + 1.0);
    if (est <= tolerance / 10.0) return out;
  }
  out.capped = true;
  return out;
}

}  // namespace infravac
