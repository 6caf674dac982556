#pragma once
// Transverse vector harmonics on the sphere: the electric family is the
// normalized tangential gradient of a scalar harmonic, the magnetic family
// its rotation by the unit direction.  Together they are an orthonormal basis
// of square-integrable tangent fields.

#include <complex>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "infravac/harmonics/quadrature.hpp"
#include "infravac/harmonics/spherical.hpp"
#include "infravac/vec3.hpp"

namespace infravac::harmonics {

enum class Pol { plus, minus };  // electric / magnetic family

struct AngularMode {
  int l;
  int m;
  Pol pol;

  AngularMode(int l_, int m_, Pol p_) : l(l_), m(m_), pol(p_) {
    if (l < 1 || std::abs(m) > l)
      throw std::invalid_argument("angular mode: need l >= 1, |m| <= l");
  }

  friend auto operator<=>(const AngularMode&, const AngularMode&) = default;
};

inline std::vector<AngularMode> mode_list(int lmax) {
  std::vector<AngularMode> out;
  for (int l = 1; l <= lmax; ++l)
    for (int m = -l; m <= l; ++m)
      for (Pol p : {Pol::plus, Pol::minus}) out.emplace_back(l, m, p);
  return out;
}

constexpr double pole_tolerance = 1e-12;

// All vector harmonics with l <= lmax at one direction, in Cartesian
// components.  Order matches mode_list(lmax).
class VectorHarmonicsAtNode {
public:
  VectorHarmonicsAtNode(int lmax, double ct, double phi)
      : scalars_(lmax, ct, phi), lmax_(lmax) {
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    if (st < pole_tolerance)
      throw std::invalid_argument("vector harmonics: direction at a pole");
    const double cp = std::cos(phi), sp = std::sin(phi);
    khat_ = {st * cp, st * sp, ct};
    theta_hat_ = {ct * cp, ct * sp, -st};
    phi_hat_ = {-sp, cp, 0.0};
    inv_st_ = 1.0 / st;
  }

  Vec3c operator()(const AngularMode& mode) const {
    if (mode.l > lmax_)
      throw std::invalid_argument("vector harmonics: l exceeds table");
    const double scale =
        1.0 / std::sqrt(static_cast<double>(mode.l) * (mode.l + 1));
    const std::complex<double> dt = scalars_.dY_dtheta(mode.l, mode.m);
    const std::complex<double> dp = std::complex<double>(0.0, mode.m) *
                                    inv_st_ * scalars_.Y(mode.l, mode.m);
    Vec3c e{};
    for (int i = 0; i < 3; ++i)
      e[i] = scale * (dt * theta_hat_[i] + dp * phi_hat_[i]);
    if (mode.pol == Pol::plus) return e;
    return cross(khat_, e);
  }

  std::vector<Vec3c> all() const {
    std::vector<Vec3c> out;
    out.reserve(2 * static_cast<std::size_t>(lmax_) * (lmax_ + 2));
    for (const auto& mode : mode_list(lmax_)) out.push_back((*this)(mode));
    return out;
  }

  const Vec3& direction() const { return khat_; }

private:
  ScalarHarmonicsAtNode scalars_;
  int lmax_;
  double inv_st_;
  Vec3 khat_, theta_hat_, phi_hat_;
};

inline Vec3c vector_Y(const AngularMode& mode, double ct, double phi) {
  return VectorHarmonicsAtNode(mode.l, ct, phi)(mode);
}

struct GramResult {
  std::vector<AngularMode> modes;
  std::vector<std::vector<std::complex<double>>> matrix;
  double max_deviation = 0.0;  // from the identity
};

inline GramResult gram_matrix(int lmax, const SphericalQuadrature& quad) {
  if (quad.order() < 2 * lmax + 2)
    throw std::invalid_argument("gram_matrix: quadrature order too small");
  GramResult g;
  g.modes = mode_list(lmax);
  const std::size_t n = g.modes.size();
  g.matrix.assign(n, std::vector<std::complex<double>>(n));
  for (const auto& node : quad.nodes()) {
    const auto vals = VectorHarmonicsAtNode(lmax, node.ct, node.phi).all();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        g.matrix[i][j] += node.weight * cdot(vals[i], vals[j]);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      g.matrix[i][j] = std::conj(g.matrix[j][i]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double dev =
          std::abs(g.matrix[i][j] - (i == j ? 1.0 : 0.0));
      if (dev > g.max_deviation) g.max_deviation = dev;
    }
  return g;
}

enum class Smoothness { analytic, finite_regularity };

struct TangentField {
  std::function<Vec3c(double ct, double phi)> eval;
  Smoothness tag = Smoothness::analytic;
};

struct ExpansionResult {
  std::map<AngularMode, std::complex<double>> coefficients;
  double field_norm_sq = 0.0;   // quadrature of |f|^2
  double coeff_norm_sq = 0.0;   // sum of |c|^2
  double residual_sq = 0.0;     // field_norm_sq - coeff_norm_sq
};

constexpr double transversality_tolerance = 1e-10;

inline ExpansionResult expand_tangent_field(const TangentField& field,
                                            int lmax,
                                            const SphericalQuadrature& quad) {
  if (quad.order() < 2 * lmax + 2)
    throw std::invalid_argument("expand: quadrature order too small");
  const auto modes = mode_list(lmax);
  std::vector<std::complex<double>> coeffs(modes.size());
  double total_norm_sq = 0.0;
  for (const auto& node : quad.nodes()) {
    const VectorHarmonicsAtNode basis(lmax, node.ct, node.phi);
    const Vec3c f = field.eval(node.ct, node.phi);
    const double radial = std::abs(cdot(to_complex(basis.direction()), f));
    if (radial > transversality_tolerance *
                     std::max(1.0, std::sqrt(norm_sq(f))))
      throw std::invalid_argument("expand: field is not transverse");
    total_norm_sq += node.weight * norm_sq(f);
    const auto vals = basis.all();
    for (std::size_t i = 0; i < modes.size(); ++i)
      coeffs[i] += node.weight * cdot(vals[i], f);
  }
  ExpansionResult out;
  out.field_norm_sq = total_norm_sq;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    out.coefficients[modes[i]] = coeffs[i];
    out.coeff_norm_sq += std::norm(coeffs[i]);
  }
  out.residual_sq = out.field_norm_sq - out.coeff_norm_sq;
  return out;
}

}  // namespace infravac::harmonics
