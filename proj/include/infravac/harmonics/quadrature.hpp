#pragma once
// Product quadrature on the unit sphere: Gauss-Legendre in cos(theta) times a
// uniform azimuthal rule.  Declared order = largest polynomial/Fourier degree
// integrated exactly.  No node ever sits on a pole.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace infravac::harmonics {

struct Node1D {
  double x;
  double w;
};

// Nodes and weights on (-1, 1) by Newton iteration on the Legendre recurrence.
inline std::vector<Node1D> gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1");
  std::vector<Node1D> out(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    out[i] = {-z, 2.0 / ((1.0 - z * z) * pp * pp)};
    out[n - 1 - i] = {z, out[i].w};
  }
  return out;
}

// Same rule mapped onto [a, b].
inline std::vector<Node1D> gauss_legendre_on(double a, double b, int n) {
  auto nodes = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (auto& nd : nodes) {
    nd.x = mid + half * nd.x;
    nd.w *= half;
  }
  return nodes;
}

struct SphericalNode {
  double ct;   // cos(theta)
  double phi;
  double weight;
};

class SphericalQuadrature {
public:
  static SphericalQuadrature build(int order) {
    if (order < 0) throw std::invalid_argument("quadrature: order >= 0");
    SphericalQuadrature q;
    q.order_ = order;
    const int n_theta = order / 2 + 1;
    const int n_phi = order + 1;
    const auto gl = gauss_legendre(n_theta);
    const double wphi = 2.0 * std::numbers::pi / n_phi;
    q.nodes_.reserve(static_cast<std::size_t>(n_theta) * n_phi);
    for (const auto& [x, w] : gl)
      for (int j = 0; j < n_phi; ++j)
        q.nodes_.push_back({x, wphi * j, w * wphi});
    return q;
  }

  int order() const { return order_; }
  const std::vector<SphericalNode>& nodes() const { return nodes_; }

  double weight_sum() const {
    double s = 0.0;
    for (const auto& n : nodes_) s += n.weight;
    return s;
  }

  // Integrate an angular function f(ct, phi).
  template <class F>
  auto integrate(F&& f) const -> decltype(f(0.0, 0.0)) {
    decltype(f(0.0, 0.0)) acc{};
    for (const auto& n : nodes_) acc += n.weight * f(n.ct, n.phi);
    return acc;
  }

private:
  SphericalQuadrature() = default;
  int order_ = 0;
  std::vector<SphericalNode> nodes_;
};

}  // namespace infravac::harmonics
