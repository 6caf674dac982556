#pragma once
// Complex spherical harmonics in the Condon-Shortley convention, evaluated by
// stable recurrences on the fully normalized associated Legendre functions.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace infravac::harmonics {

// Fully normalized associated Legendre values Plm(x) for 0 <= m <= l <= lmax,
// such that Y_lm = Plm(cos theta) e^{i m phi}.  Condon-Shortley phase baked
// into the m -> m+1 step.
class LegendreTable {
public:
  LegendreTable(int lmax, double x) : lmax_(lmax) {
    if (lmax < 0) throw std::invalid_argument("legendre: lmax >= 0");
    if (!(x >= -1.0 && x <= 1.0))
      throw std::invalid_argument("legendre: |x| <= 1");
    vals_.assign(static_cast<std::size_t>(lmax + 1) * (lmax + 2) / 2, 0.0);
    const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
    at(0, 0) = 1.0 / std::sqrt(4.0 * std::numbers::pi);
    for (int m = 1; m <= lmax; ++m)
      at(m, m) = -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * at(m - 1, m - 1);
    for (int m = 0; m < lmax; ++m)
      at(m + 1, m) = std::sqrt(2.0 * m + 3.0) * x * at(m, m);
    for (int m = 0; m <= lmax; ++m)
      for (int l = m + 2; l <= lmax; ++l) {
        const double a =
            std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - m * m));
        const double b = std::sqrt(
            ((l - 1.0) * (l - 1.0) - m * m) / (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
        at(l, m) = a * (x * at(l - 1, m) - b * at(l - 2, m));
      }
  }

  int lmax() const { return lmax_; }

  double operator()(int l, int m) const {
    if (l < 0 || l > lmax_ || m < 0 || m > l)
      throw std::invalid_argument("legendre: index out of range");
    return vals_[idx(l, m)];
  }

private:
  double& at(int l, int m) { return vals_[idx(l, m)]; }
  static std::size_t idx(int l, int m) {
    return static_cast<std::size_t>(l) * (l + 1) / 2 + m;
  }
  int lmax_;
  std::vector<double> vals_;
};

// All scalar harmonics at one direction, -l <= m <= l convention handled via
// Y_{l,-m} = (-1)^m conj(Y_{lm}).
class ScalarHarmonicsAtNode {
public:
  ScalarHarmonicsAtNode(int lmax, double ct, double phi)
      : table_(lmax, ct), phi_(phi) {}

  std::complex<double> Y(int l, int m) const {
    const int am = std::abs(m);
    if (l < 0 || l > table_.lmax() || am > l)
      throw std::invalid_argument("scalar_Y: invalid mode");
    const std::complex<double> pos =
        table_(l, am) * std::polar(1.0, am * phi_);
    if (m >= 0) return pos;
    const double sign = am % 2 == 0 ? 1.0 : -1.0;
    return sign * std::conj(pos);
  }

  // d/dtheta Y_lm via the angular-momentum ladder identity
  //   2 dY_lm = sqrt((l-m)(l+m+1)) e^{-i phi} Y_{l,m+1}
  //           - sqrt((l+m)(l-m+1)) e^{+i phi} Y_{l,m-1}.
  std::complex<double> dY_dtheta(int l, int m) const {
    std::complex<double> up{}, down{};
    if (m + 1 <= l)
      up = std::sqrt(static_cast<double>(l - m) * (l + m + 1)) *
           std::polar(1.0, -phi_) * Y(l, m + 1);
    if (m - 1 >= -l)
      down = std::sqrt(static_cast<double>(l + m) * (l - m + 1)) *
             std::polar(1.0, phi_) * Y(l, m - 1);
    return 0.5 * (up - down);
  }

private:
  LegendreTable table_;
  double phi_;
};

inline std::complex<double> scalar_Y(int l, int m, double ct, double phi) {
  if (l < 0 || std::abs(m) > l)
    throw std::invalid_argument("scalar_Y: invalid mode");
  return ScalarHarmonicsAtNode(l, ct, phi).Y(l, m);
}

}  // namespace infravac::harmonics
