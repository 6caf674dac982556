#pragma once
// Velocity-sector witness: the aberration map F_v, a smooth angular window
// vanishing near the plane of two velocities, and the paired quadrature /
// closed-form evaluation whose agreement and nonvanishing separate the two
// sectors.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "infravac/dressing/dressing.hpp"
#include "infravac/harmonics/quadrature.hpp"
#include "infravac/vec3.hpp"

namespace infravac {

// F_v(khat) = (v - khat) / (1 - khat.v).  Satisfies khat.F_v = -1, so
// differences F_v - F_v' are tangent to the sphere.
inline Vec3 aberration(const Vec3& w, const Vec3& khat) {
  if (!(norm(w) < 1.0)) throw std::invalid_argument("aberration: |w| < 1");
  const double den = 1.0 - dot(khat, w);
  return (1.0 / den) * (w - khat);
}

inline double aberration_distance(const Vec3& w1, const Vec3& w2,
                                  const Vec3& khat) {
  return norm(aberration(w1, khat) - aberration(w2, khat));
}

// Two velocities, a radial band, an amplitude and the half-angle of the
// excluded slab around the plane spanned by the velocities.  The window
// construction needs that plane to be two-dimensional, so collinear pairs
// (including equal ones) are rejected.
struct WitnessSpec {
  Vec3 w{0.0, 0.0, 0.2};
  Vec3 w_prime{0.3, 0.0, 0.0};
  double sigma = 1.0 / 16.0;
  double kappa = 1.0;
  double amplitude = 1.0;
  double alpha = 0.1;
  double exclusion_deg = 15.0;

  WitnessSpec(const Vec3& w_, const Vec3& w_prime_, double sigma_,
              double kappa_, double amplitude_ = 1.0, double alpha_ = 0.1,
              double exclusion_deg_ = 15.0)
      : w(w_), w_prime(w_prime_), sigma(sigma_), kappa(kappa_),
        amplitude(amplitude_), alpha(alpha_), exclusion_deg(exclusion_deg_) {
    if (!(norm(w) < 1.0 && norm(w_prime) < 1.0))
      throw std::invalid_argument("witness: velocities inside the unit ball");
    if (norm(cross(w, w_prime)) <= 1e-12)
      throw std::invalid_argument("witness: velocities must span a plane");
    if (!(sigma > 0.0 && sigma < kappa))
      throw std::invalid_argument("witness: 0 < sigma < kappa");
    if (!(alpha > 0.0)) throw std::invalid_argument("witness: alpha > 0");
    if (!(exclusion_deg > 0.0 && exclusion_deg < 90.0))
      throw std::invalid_argument("witness: exclusion angle in (0, 90)");
  }
};

// chi(khat) depends on u = |khat.normal|, the sine of the angle between khat
// and the velocity plane: zero for u <= u0 = sin(exclusion), and the smooth
// ramp exp(-gamma / (u - u0)^2) above, normalized so chi ~ e^{-1} one
// exclusion-angle further out.
struct PlaneWindow {
  Vec3 normal{0.0, 0.0, 1.0};
  double u0 = 0.0;
  double gamma = 1.0;

  double operator()(const Vec3& khat) const {
    const double u = std::abs(dot(khat, normal));
    if (u <= u0) return 0.0;
    const double d = u - u0;
    return std::exp(-gamma / (d * d));
  }
};

inline PlaneWindow plane_window(const WitnessSpec& spec) {
  PlaneWindow win;
  const Vec3 n = cross(spec.w, spec.w_prime);
  win.normal = (1.0 / norm(n)) * n;
  const double rad = spec.exclusion_deg * std::numbers::pi / 180.0;
  win.u0 = std::sin(rad);
  const double step = std::sin(std::min(2.0 * rad, 0.5 * std::numbers::pi)) - win.u0;
  win.gamma = step * step;
  return win;
}

struct WitnessResult {
  double lhs = 0.0;  // per-velocity pairings, quadrature route
  double rhs = 0.0;  // pre-cancelled closed form
  double relative_gap = 0.0;

  double angular_w = 0.0;        // window-weighted pairing of velocity w
  double angular_wprime = 0.0;   // same for w'
  double chi_integral = 0.0;     // \int chi dOmega
  double radial_numeric = 0.0;   // \int_sigma^kappa sqrt(k) dk by quadrature
  double radial_closed = 0.0;    // (2/3)(kappa^{3/2} - sigma^{3/2})

  double min_separation_sq = 0.0;  // min |F_w - F_w'|^2 on the window support
  double window_fraction = 0.0;    // weight fraction with chi > 0
  bool window_nonzero = false;
  bool separation_ok = false;
};

// lhs pairs each velocity's transverse profile against the normalized
// aberration difference under the window, then multiplies by the numeric
// radial factor; rhs is the closed form amplitude * sqrt(alpha) * radial *
// \int chi.  The two agree because the profile difference collapses onto the
// aberration difference, but the lhs route never uses that cancellation.
inline WitnessResult superselection_witness(const WitnessSpec& spec,
                                            int angular_order = 128,
                                            int radial_nodes = 64) {
  WitnessResult out;
  const PlaneWindow win = plane_window(spec);
  const auto quad = harmonics::SphericalQuadrature::build(angular_order);

  const DressingSpec ds_w(spec.w, spec.alpha, spec.kappa);
  const DressingSpec ds_wp(spec.w_prime, spec.alpha, spec.kappa);

  double support_weight = 0.0, total_weight = 0.0;
  double min_sep = std::numeric_limits<double>::infinity();
  for (const auto& node : quad.nodes()) {
    total_weight += node.weight;
    const Vec3 khat = unit_from_angles(node.ct, node.phi);
    const double chi = win(khat);
    if (chi <= 0.0) continue;
    support_weight += node.weight;
    const Vec3 diff = aberration(spec.w, khat) - aberration(spec.w_prime, khat);
    const double sep_sq = dot(diff, diff);
    min_sep = std::min(min_sep, sep_sq);
    const Vec3c f_w = dressing_transverse(ds_w, khat);
    const Vec3c f_wp = dressing_transverse(ds_wp, khat);
    double dot_w = 0.0, dot_wp = 0.0;
    for (int a = 0; a < 3; ++a) {
      dot_w += f_w[static_cast<std::size_t>(a)].real() * diff[static_cast<std::size_t>(a)];
      dot_wp += f_wp[static_cast<std::size_t>(a)].real() * diff[static_cast<std::size_t>(a)];
    }
    out.chi_integral += node.weight * chi;
    out.angular_w += node.weight * chi * dot_w / sep_sq;
    out.angular_wprime += node.weight * chi * dot_wp / sep_sq;
  }
  out.window_fraction = total_weight > 0.0 ? support_weight / total_weight : 0.0;
  out.window_nonzero = support_weight > 0.0;
  out.min_separation_sq = out.window_nonzero ? min_sep : 0.0;
  out.separation_ok = out.window_nonzero && min_sep >= 1e-6;

  for (const auto& node :
       harmonics::gauss_legendre_on(spec.sigma, spec.kappa, radial_nodes))
    out.radial_numeric += node.w * std::sqrt(node.x);
  out.radial_closed =
      (2.0 / 3.0) * (std::pow(spec.kappa, 1.5) - std::pow(spec.sigma, 1.5));

  out.lhs = spec.amplitude * out.radial_numeric *
            (out.angular_w - out.angular_wprime);
  out.rhs = spec.amplitude * std::sqrt(spec.alpha) * out.radial_closed *
            out.chi_integral;
  const double denom = std::max(std::abs(out.lhs), std::abs(out.rhs));
  out.relative_gap = denom > 0.0 ? std::abs(out.lhs - out.rhs) / denom : 0.0;
  return out;
}

}  // namespace infravac
