// Sparse coefficient vectors over the (shell x radial-channel x angular-mode)
// orthonormal basis, with inner product, symplectic form, conjugation, point
// evaluation and a plain-text serialization.
#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "infravac/fieldspace/shell_grid.hpp"
#include "infravac/harmonics/vector_sh.hpp"
#include "infravac/vec3.hpp"

namespace infravac {

using harmonics::AngularMode;
using harmonics::Pol;

struct ChannelIndex {
  int shell;
  ChannelKind kind;
  AngularMode mode;

  friend auto operator<=>(const ChannelIndex&, const ChannelIndex&) = default;
};

class FieldVector {
 public:
  using Coefficients = std::map<ChannelIndex, std::complex<double>>;

  explicit FieldVector(ShellGrid grid) : grid_(grid) {}

  const ShellGrid& grid() const { return grid_; }
  const Coefficients& coefficients() const { return coef_; }
  std::size_t support_size() const { return coef_.size(); }

  void set(const ChannelIndex& idx, std::complex<double> c) {
    if (idx.shell < 1 || idx.shell > grid_.n_shells)
      throw std::out_of_range("FieldVector::set: shell index");
    if (c == std::complex<double>{})
      coef_.erase(idx);
    else
      coef_[idx] = c;
  }

  std::complex<double> coefficient(const ChannelIndex& idx) const {
    auto it = coef_.find(idx);
    return it == coef_.end() ? std::complex<double>{} : it->second;
  }

  FieldVector& operator+=(const FieldVector& o) {
    require_same_grid(o);
    for (const auto& [idx, c] : o.coef_) set(idx, coefficient(idx) + c);
    return *this;
  }
  FieldVector& operator-=(const FieldVector& o) {
    require_same_grid(o);
    for (const auto& [idx, c] : o.coef_) set(idx, coefficient(idx) - c);
    return *this;
  }
  FieldVector& operator*=(std::complex<double> z) {
    if (z == std::complex<double>{}) {
      coef_.clear();
      return *this;
    }
    for (auto& [idx, c] : coef_) c *= z;
    return *this;
  }

  friend FieldVector operator+(FieldVector a, const FieldVector& b) { return a += b; }
  friend FieldVector operator-(FieldVector a, const FieldVector& b) { return a -= b; }
  friend FieldVector operator*(std::complex<double> z, FieldVector f) { return f *= z; }
  friend FieldVector operator-(FieldVector f) { return f *= -1.0; }

  void require_same_grid(const FieldVector& o) const {
    if (!(grid_ == o.grid_))
      throw std::invalid_argument("FieldVector: shell grid mismatch");
  }

 private:
  ShellGrid grid_;
  Coefficients coef_;
};

// Conjugate-linear in the first slot.
inline std::complex<double> inner_product(const FieldVector& f, const FieldVector& g) {
  f.require_same_grid(g);
  std::complex<double> acc{};
  const auto& a = f.coefficients();
  const auto& b = g.coefficients();
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first)
      ++ia;
    else if (ib->first < ia->first)
      ++ib;
    else {
      acc += std::conj(ia->second) * ib->second;
      ++ia;
      ++ib;
    }
  }
  return acc;
}

inline double norm_sq(const FieldVector& f) {
  double acc = 0.0;
  for (const auto& [idx, c] : f.coefficients()) acc += std::norm(c);
  return acc;
}
inline double norm(const FieldVector& f) { return std::sqrt(norm_sq(f)); }

inline double symplectic_form(const FieldVector& f, const FieldVector& g) {
  return std::imag(inner_product(f, g));
}

// Coefficient-space image of pointwise complex conjugation: the basis fields
// satisfy conj(Y_{l,m,pol}) = (-1)^m Y_{l,-m,pol} and the radial profiles are
// real, so conjugation swaps m -> -m with a sign.
inline FieldVector gamma_conj(const FieldVector& f) {
  FieldVector out(f.grid());
  for (const auto& [idx, c] : f.coefficients()) {
    const AngularMode flipped(idx.mode.l, -idx.mode.m, idx.mode.pol);
    const double sign = (idx.mode.m % 2 == 0) ? 1.0 : -1.0;
    out.set({idx.shell, idx.kind, flipped}, sign * std::conj(c));
  }
  return out;
}

inline FieldVector gamma_even_part(const FieldVector& f) {
  return 0.5 * (f + gamma_conj(f));
}
inline FieldVector gamma_odd_part(const FieldVector& f) {
  return 0.5 * (f - gamma_conj(f));
}
// Distance to the fixed-point set of the conjugation ("real-valued" fields).
inline double gamma_deviation(const FieldVector& f) {
  return norm(f - gamma_conj(f));
}

// Pointwise value at radius r and direction (ct, phi), in Cartesian components.
inline Vec3c evaluate(const FieldVector& f, double r, double ct, double phi) {
  int lmax = 1;
  for (const auto& [idx, c] : f.coefficients()) lmax = std::max(lmax, idx.mode.l);
  const harmonics::VectorHarmonicsAtNode vh(lmax, ct, phi);
  Vec3c out{};
  for (const auto& [idx, c] : f.coefficients()) {
    const double rad = radial_profile(f.grid(), idx.shell, idx.kind, r);
    if (rad == 0.0) continue;
    const Vec3c y = vh(idx.mode);
    const std::complex<double> w = c * rad;
    for (int a = 0; a < 3; ++a) out[a] += w * y[a];
  }
  return out;
}

// Text form: one header line, then one line per stored coefficient.  Decimal
// encoding uses 17 significant digits, enough to round-trip doubles exactly.
inline std::string to_text(const FieldVector& f) {
  std::string out = "fieldvector kappa ";
  char buf[128];
  std::snprintf(buf, sizeof buf, "%.17g n_shells %d entries %zu\n", f.grid().kappa,
                f.grid().n_shells, f.coefficients().size());
  out += buf;
  for (const auto& [idx, c] : f.coefficients()) {
    std::snprintf(buf, sizeof buf, "%d %s %d %d %s %.17g %.17g\n", idx.shell,
                  idx.kind == ChannelKind::xi ? "xi" : "aux", idx.mode.l, idx.mode.m,
                  idx.mode.pol == Pol::plus ? "+" : "-", c.real(), c.imag());
    out += buf;
  }
  return out;
}

inline FieldVector field_vector_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string tag, kw1, kw2, kw3;
  double kappa = 0.0;
  int n_shells = 0;
  std::size_t entries = 0;
  if (!(in >> tag >> kw1 >> kappa >> kw2 >> n_shells >> kw3 >> entries) ||
      tag != "fieldvector" || kw1 != "kappa" || kw2 != "n_shells" || kw3 != "entries")
    throw std::invalid_argument("field vector text: bad header");
  FieldVector f(ShellGrid(kappa, n_shells));
  for (std::size_t k = 0; k < entries; ++k) {
    int shell = 0, l = 0, m = 0;
    std::string kind, pol;
    double re = 0.0, im = 0.0;
    if (!(in >> shell >> kind >> l >> m >> pol >> re >> im))
      throw std::invalid_argument("field vector text: truncated entry");
    if ((kind != "xi" && kind != "aux") || (pol != "+" && pol != "-"))
      throw std::invalid_argument("field vector text: bad channel tag");
    f.set({shell, kind == "xi" ? ChannelKind::xi : ChannelKind::aux,
           AngularMode(l, m, pol == "+" ? Pol::plus : Pol::minus)},
          {re, im});
  }
  return f;
}

}  // namespace infravac
