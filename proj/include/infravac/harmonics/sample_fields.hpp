#pragma once
// Bundled tangent fields used by the expansion diagnostics: tangential
// projections of simple ambient vector fields, plus one field of limited
// smoothness to exercise slow coefficient decay.

#include <cmath>

#include "infravac/harmonics/vector_sh.hpp"

namespace infravac::harmonics {

inline Vec3c project_tangent(const Vec3& khat, const Vec3c& f) {
  const std::complex<double> radial = cdot(to_complex(khat), f);
  Vec3c out;
  for (int i = 0; i < 3; ++i) out[i] = f[i] - radial * khat[i];
  return out;
}

inline std::vector<TangentField> bundled_tangent_fields() {
  auto tangential = [](auto ambient, Smoothness tag) {
    return TangentField{
        [ambient](double ct, double phi) {
          const Vec3 k = unit_from_angles(ct, phi);
          return project_tangent(k, ambient(k));
        },
        tag};
  };
  using C = std::complex<double>;
  std::vector<TangentField> fields;
  fields.push_back(tangential([](const Vec3&) { return Vec3c{1.0, 0.0, 0.0}; },
                              Smoothness::analytic));
  fields.push_back(tangential([](const Vec3&) { return Vec3c{0.0, 1.0, 0.0}; },
                              Smoothness::analytic));
  fields.push_back(tangential([](const Vec3&) { return Vec3c{0.0, 0.0, 1.0}; },
                              Smoothness::analytic));
  fields.push_back(tangential(
      [](const Vec3& k) {
        return Vec3c{C(k[1], k[2]), C(k[2], k[0]), C(k[0], k[1])};
      },
      Smoothness::analytic));
  fields.push_back(tangential(
      [](const Vec3& k) {
        const double g = std::exp(-2.0 * (1.0 - k[2]));
        return Vec3c{g, 0.5 * g * k[0], -g * k[1]};
      },
      Smoothness::analytic));
  fields.push_back(tangential(
      [](const Vec3& k) {
        return Vec3c{std::sin(2.0 * k[2]), std::cos(k[0] + k[1]), 0.25};
      },
      Smoothness::analytic));
  fields.push_back(tangential(
      [](const Vec3& k) {
        const double d = 1.0 / (1.0 - 0.45 * k[2]);
        return Vec3c{0.3 * d, 0.0, d};
      },
      Smoothness::analytic));
  fields.push_back(tangential(
      [](const Vec3& k) {
        return Vec3c{C(0.0, k[2] * k[2]), C(k[0] * k[1], 0.0), C(1.0, -1.0)};
      },
      Smoothness::analytic));
  fields.push_back(tangential(
      [](const Vec3& k) {
        const double b = std::exp(-4.0 * (k[0] * k[0] + k[1] * k[1]));
        return Vec3c{0.0, b, b * k[2]};
      },
      Smoothness::analytic));
  // |k_z|^3 has only three continuous derivatives across the equator.
  fields.push_back(tangential(
      [](const Vec3& k) {
        const double a = std::abs(k[2] * k[2] * k[2]);
        return Vec3c{a, 0.2 * a, 0.0};
      },
      Smoothness::finite_regularity));
  return fields;
}

}  // namespace infravac::harmonics
