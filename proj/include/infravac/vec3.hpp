#pragma once
// Small fixed-size vector helpers shared across modules.

#include <array>
#include <cmath>
#include <complex>

namespace infravac {

using Vec3 = std::array<double, 3>;
using Vec3c = std::array<std::complex<double>, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Vec3 operator*(double s, const Vec3& a) {
  return {s * a[0], s * a[1], s * a[2]};
}

inline Vec3c to_complex(const Vec3& a) {
  return {std::complex<double>(a[0]), std::complex<double>(a[1]),
          std::complex<double>(a[2])};
}

// Hermitian inner product on C^3, conjugate-linear in the first slot.
inline std::complex<double> cdot(const Vec3c& a, const Vec3c& b) {
  return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1] +
         std::conj(a[2]) * b[2];
}

inline double norm_sq(const Vec3c& a) { return cdot(a, a).real(); }

inline Vec3c cross(const Vec3& a, const Vec3c& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

inline Vec3c operator+(const Vec3c& a, const Vec3c& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline Vec3c operator-(const Vec3c& a, const Vec3c& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Vec3c operator*(std::complex<double> s, const Vec3c& a) {
  return {s * a[0], s * a[1], s * a[2]};
}

// Unit direction from polar data; ct = cos(theta).
inline Vec3 unit_from_angles(double ct, double phi) {
  const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
  return {st * std::cos(phi), st * std::sin(phi), ct};
}

}  // namespace infravac
