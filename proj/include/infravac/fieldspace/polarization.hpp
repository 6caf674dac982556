// Pointwise polarization frame on the sphere and the transverse projection.
#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "infravac/vec3.hpp"

namespace infravac {

inline constexpr double polarization_pole_tol = 1e-12;

// Right-handed tangent frame {eps_plus, eps_minus, khat}; undefined on the z-axis.
inline std::pair<Vec3, Vec3> polarization_vectors(const Vec3& khat) {
  const double rho_sq = khat[0] * khat[0] + khat[1] * khat[1];
  if (rho_sq <= polarization_pole_tol * polarization_pole_tol)
    throw std::invalid_argument("polarization_vectors: khat at the z-axis pole");
  const double inv = 1.0 / std::sqrt(rho_sq);
  const Vec3 ep{khat[1] * inv, -khat[0] * inv, 0.0};
  const Vec3 em = cross(khat, ep);
  return {ep, em};
}

// (P f)(khat) = sum_pol (f . eps) eps with the plain bilinear dot (frame is real);
// equals f minus its radial component.
inline Vec3c transverse_project(const Vec3& khat, const Vec3c& f) {
  const auto [ep, em] = polarization_vectors(khat);
  std::complex<double> cp{0.0, 0.0}, cm{0.0, 0.0};
  for (int a = 0; a < 3; ++a) {
    cp += f[a] * ep[a];
    cm += f[a] * em[a];
  }
  Vec3c out{};
  for (int a = 0; a < 3; ++a) out[a] = cp * ep[a] + cm * em[a];
  return out;
}

}  // namespace infravac
