// Velocity-profile fields: pinned values, closed-form norms against
// quadrature and brute-force oracles, the transverse expansion bookkeeping,
// approximant norm laws, and the convergence / divergence diagnostics.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "infravac/dressing/dressing.hpp"

namespace iv = infravac;
using iv::AngularTable;
using iv::ChannelKind;
using iv::DressingSpec;
using iv::FieldVector;
using iv::InfravacuumMap;
using iv::ShellGrid;
using iv::Vec3;
using iv::Vec3c;
using infravac::operator+;
using infravac::operator-;
using infravac::operator*;
using std::complex;

namespace {

std::mt19937_64 rng(0xd12e551e5u);

Vec3 random_unit() {
  std::normal_distribution<double> gauss;
  Vec3 v{gauss(rng), gauss(rng), gauss(rng)};
  return (1.0 / iv::norm(v)) * v;
}

// midpoint-rule \int_{-1}^{1} (1-t^2)/(1-wt)^p dt with a million panels
double riemann_axis_integral(double w, int power, int n = 1000000) {
  const double h = 2.0 / n;
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    const double t = -1.0 + (j + 0.5) * h;
    double den = 1.0;
    for (int q = 0; q < power; ++q) den *= 1.0 - w * t;
    sum += (1.0 - t * t) / den;
  }
  return sum * h;
}

// antiderivative route for \int (1-t^2)/(1-wt)^4 dt after u = 1 - wt
double quartic_axis_closed(double w) {
  const auto F = [w](double u) {
    return 1.0 / u - 1.0 / (u * u) + (1.0 - w * w) / (3.0 * u * u * u);
  };
  return (F(1.0 + w) - F(1.0 - w)) / (w * w * w);
}

double transverse_norm_closed(double alpha, double w) {
  if (w == 0.0) return 0.0;
  return 8.0 * std::numbers::pi * alpha * (std::atanh(w) - w) / w;
}

}  // namespace

TEST_CASE("rest velocity gives the zero field everywhere") {
  const DressingSpec spec({0.0, 0.0, 0.0}, 0.1, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec3 khat = random_unit();
    CHECK(iv::norm(iv::dressing_profile(spec, khat)) == 0.0);
    CHECK(iv::norm_sq(iv::dressing_transverse(spec, khat)) == 0.0);
  }
  CHECK(iv::transverse_norm_sq_1d(spec) == 0.0);
  CHECK(iv::full_norm_sq_closed(spec) == 0.0);
  CHECK(iv::l2_weighted_1d(spec) == 0.0);

  const AngularTable table = iv::angular_table(spec, 12);
  CHECK(table.total == 0.0);
  CHECK(table.coefficients.empty());

  const ShellGrid grid(1.0, 12);
  CHECK(iv::dressing_approximant(spec, grid, 8, table).support_size() == 0);
}

TEST_CASE("profile pins, node bound, and rejected parameters") {
  const DressingSpec spec({0.0, 0.0, 0.3}, 0.1, 1.0);
  const double amp = std::sqrt(0.1);

  const Vec3 at_x = iv::dressing_profile(spec, {1.0, 0.0, 0.0});
  CHECK(at_x[0] == 0.0);
  CHECK(at_x[1] == 0.0);
  CHECK(at_x[2] == Catch::Approx(amp * 0.3).margin(1e-15));

  const Vec3 at_z = iv::dressing_profile(spec, {0.0, 0.0, 1.0});
  CHECK(at_z[2] == Catch::Approx(amp * 0.3 / 0.7).margin(1e-15));

  // uniform node bound sqrt(alpha) v_max / (1 - v_max)
  const auto quad = iv::harmonics::SphericalQuadrature::build(64);
  const double bound = amp * 0.95 / 0.05;
  const double tight = amp * 0.3 / 0.7;
  for (const auto& node : quad.nodes()) {
    const double mag =
        iv::norm(iv::dressing_profile(spec, iv::unit_from_angles(node.ct, node.phi)));
    CHECK(mag <= bound);
    CHECK(mag <= tight + 1e-14);
  }

  CHECK_THROWS_AS(DressingSpec({1.2, 0.0, 0.0}, 0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(DressingSpec({0.96, 0.0, 0.0}, 0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(DressingSpec({0.1, 0.0, 0.0}, -0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(DressingSpec({0.1, 0.0, 0.0}, 0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(DressingSpec({0.1, 0.0, 0.0}, 0.1, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("transverse part: projector identity and closed norms") {
  const DressingSpec spec({0.0, 0.0, 0.3}, 0.1, 1.0);

  for (int trial = 0; trial < 50; ++trial) {
    const Vec3 khat = random_unit();
    const Vec3 full = iv::dressing_profile(spec, khat);
    const Vec3c tr = iv::dressing_transverse(spec, khat);
    // orthogonal to the direction, and equal to the subtraction form
    complex<double> along{};
    for (int a = 0; a < 3; ++a) along += khat[a] * tr[a];
    CHECK(std::abs(along) <= 1e-15);
    const double radial = iv::dot(khat, full);
    for (int a = 0; a < 3; ++a)
      CHECK(std::abs(tr[a] - (full[a] - radial * khat[a])) <= 1e-14);
  }

  const auto quad = iv::harmonics::SphericalQuadrature::build(64);
  double tr_quad = 0.0, full_quad = 0.0;
  for (const auto& node : quad.nodes()) {
    const Vec3 khat = iv::unit_from_angles(node.ct, node.phi);
    tr_quad += node.weight * iv::norm_sq(iv::dressing_transverse(spec, khat));
    const Vec3 f = iv::dressing_profile(spec, khat);
    full_quad += node.weight * iv::dot(f, f);
  }
  CHECK(tr_quad == Catch::Approx(iv::transverse_norm_sq_1d(spec)).epsilon(1e-12));
  CHECK(full_quad == Catch::Approx(iv::full_norm_sq_closed(spec)).epsilon(1e-12));

  for (const double w : {0.1, 0.2, 0.3, 0.4}) {
    const DressingSpec s({w, 0.0, 0.0}, 0.1, 1.0);
    CHECK(iv::transverse_norm_sq_1d(s) ==
          Catch::Approx(transverse_norm_closed(0.1, w)).epsilon(1e-12));
  }
}

TEST_CASE("one-dimensional integrals match a brute-force oracle") {
  const double pi = std::numbers::pi;
  for (const double w : {0.1, 0.3}) {
    const DressingSpec spec({0.0, 0.0, w}, 0.1, 1.0);
    const double p2 = 2.0 * pi * 0.1 * w * w * riemann_axis_integral(w, 2);
    const double p4 = 2.0 * pi * 0.1 * w * w * w * w * riemann_axis_integral(w, 4);
    CHECK(iv::transverse_norm_sq_1d(spec) == Catch::Approx(p2).epsilon(1e-8));
    CHECK(iv::l2_weighted_1d(spec) == Catch::Approx(p4).epsilon(1e-8));
  }

  // both functionals grow with the speed
  double prev_tr = 0.0, prev_l2 = 0.0;
  for (const double w : {0.1, 0.2, 0.3, 0.4}) {
    const DressingSpec spec({w, 0.0, 0.0}, 0.1, 1.0);
    const double tr = iv::transverse_norm_sq_1d(spec);
    const double l2 = iv::l2_weighted_1d(spec);
    CHECK(tr > prev_tr);
    CHECK(l2 > prev_l2);
    prev_tr = tr;
    prev_l2 = l2;
  }
}

TEST_CASE("smoothness functional: integral, mode, and antiderivative routes") {
  const double pi = std::numbers::pi;
  for (const double w : {0.1, 0.2, 0.3, 0.4}) {
    const DressingSpec spec({0.0, w, 0.0}, 0.1, 1.0);
    const auto routes = iv::angular_l2_weighted(spec);
    CHECK(routes.mode_route ==
          Catch::Approx(routes.integral_route).epsilon(1e-6));
    const double closed =
        2.0 * pi * 0.1 * w * w * w * w * quartic_axis_closed(w);
    CHECK(routes.integral_route == Catch::Approx(closed).epsilon(1e-10));
  }
}

TEST_CASE("angular expansion: axial support, rotation invariance, decay") {
  const DressingSpec axial({0.0, 0.0, 0.3}, 0.1, 1.0);
  const AngularTable table = iv::angular_table(axial, 24);

  for (const auto& [mode, c] : table.coefficients) {
    CHECK(mode.m == 0);
    CHECK(mode.pol == iv::Pol::plus);
  }
  CHECK(table.total ==
        Catch::Approx(iv::transverse_norm_sq_1d(axial)).epsilon(1e-9));
  CHECK(table.residual_sq <= 1e-12);

  // energies fall essentially geometrically with the analytic ratio
  const double q = iv::degree_decay_ratio(0.3);
  CHECK(q == Catch::Approx(0.023574).epsilon(1e-4));
  for (int l = 1; l + 1 <= 24; ++l) {
    const double e = table.degree_energy[l], e_next = table.degree_energy[l + 1];
    if (e > 1e-18 && e_next > 0.0) CHECK(e_next / e < 2.0 * q);
  }

  // the same speed along a tilted axis: identical degree energies
  const Vec3 axis = (1.0 / 3.0) * Vec3{1.0, 2.0, 2.0};
  const DressingSpec tilted(0.3 * axis, 0.1, 1.0);
  const AngularTable table_t = iv::angular_table(tilted, 24);
  CHECK(table_t.total == Catch::Approx(table.total).epsilon(1e-9));
  for (int l = 1; l <= 8; ++l)
    CHECK(table_t.degree_energy[l] ==
          Catch::Approx(table.degree_energy[l]).epsilon(1e-8));
  bool has_offaxis = false;
  for (const auto& [mode, c] : table_t.coefficients)
    if (mode.m != 0) has_offaxis = true;
  CHECK(has_offaxis);
}

TEST_CASE("approximants: exact norm law, support, and validation") {
  const DressingSpec spec({0.0, 0.0, 0.3}, 0.1, 1.0);
  const ShellGrid grid(1.0, 24);
  const AngularTable table = iv::angular_table(spec, 24);

  CHECK(iv::dressing_approximant(spec, grid, 1, table).support_size() == 0);
  for (const int n : {2, 5, 24}) {
    const FieldVector v = iv::dressing_approximant(spec, grid, n, table);
    CHECK(v.support_size() == (n - 1) * table.coefficients.size());
    for (const auto& [idx, c] : v.coefficients()) {
      CHECK(idx.kind == ChannelKind::xi);
      CHECK(idx.shell < n);
    }
    CHECK(iv::norm_sq(v) ==
          Catch::Approx((n - 1) * iv::shell_log() * table.total).epsilon(1e-12));
  }

  // conjugation-evenness of the family (real profile), also off-axis
  const Vec3 axis = (1.0 / 3.0) * Vec3{1.0, 2.0, 2.0};
  const DressingSpec tilted(0.3 * axis, 0.1, 1.0);
  const AngularTable table_t = iv::angular_table(tilted, 16);
  const FieldVector vt = iv::dressing_approximant(tilted, grid, 10, table_t);
  CHECK(iv::gamma_deviation(vt) <= 1e-12 * iv::norm(vt));

  CHECK_THROWS_AS(iv::dressing_approximant(spec, grid, 0, table),
                  std::out_of_range);
  CHECK_THROWS_AS(iv::dressing_approximant(spec, grid, 25, table),
                  std::out_of_range);
  CHECK_THROWS_AS(iv::dressing_approximant(spec, ShellGrid(2.0, 24), 5, table),
                  std::invalid_argument);
}

TEST_CASE("shell slices and images obey the closed norm law") {
  const DressingSpec spec({0.0, 0.0, 0.3}, 0.1, 1.0);
  const InfravacuumMap map(ShellGrid(1.0, 24));
  const AngularTable table = iv::angular_table(spec, 24);

  // disjoint shells: slices and their images are mutually orthogonal
  for (int i = 1; i <= 6; ++i)
    for (int j = i + 1; j <= 6; ++j) {
      const auto si = iv::shell_slice(spec, map.grid(), i, table);
      const auto sj = iv::shell_slice(spec, map.grid(), j, table);
      CHECK(std::abs(iv::inner_product(si, sj)) <= 1e-14);
      CHECK(std::abs(iv::inner_product(iv::shell_image(spec, map, i, table),
                                       iv::shell_image(spec, map, j, table))) <=
            1e-14);
    }

  // the actual operator route matches the closed law shell by shell
  for (int i = 1; i <= 10; ++i)
    CHECK(iv::norm_sq(iv::shell_image(spec, map, i, table)) ==
          Catch::Approx(iv::shell_image_norm_sq(map, i, table)).epsilon(1e-12));

  // difference-of-approximants norm telescopes over the closed shell norms
  const FieldVector v10 = iv::dressing_approximant(spec, map.grid(), 10, table);
  const FieldVector v4 = iv::dressing_approximant(spec, map.grid(), 4, table);
  double expect = 0.0;
  for (int i = 4; i < 10; ++i) expect += iv::shell_image_norm_sq(map, i, table);
  CHECK(iv::norm_sq(map.apply_t(v10 - v4)) == Catch::Approx(expect).epsilon(1e-12));

  // conjugation-odd inputs hit the expanding branch
  const FieldVector v6 = iv::dressing_approximant(spec, map.grid(), 6, table);
  double expect_odd = 0.0;
  for (int i = 1; i < 6; ++i)
    expect_odd += iv::shell_odd_image_norm_sq(map, i, table);
  CHECK(iv::norm_sq(map.apply_t(complex<double>{0.0, 1.0} * v6)) ==
        Catch::Approx(expect_odd).epsilon(1e-12));

  // tilted spec: the law survives because the family is conjugation-even
  const Vec3 axis = (1.0 / 3.0) * Vec3{1.0, 2.0, 2.0};
  const DressingSpec tilted(0.3 * axis, 0.1, 1.0);
  const AngularTable table_t = iv::angular_table(tilted, 16);
  CHECK(iv::norm_sq(iv::shell_image(tilted, map, 3, table_t)) ==
        Catch::Approx(iv::shell_image_norm_sq(map, 3, table_t)).epsilon(1e-10));
}

TEST_CASE("trigamma helper matches classical values") {
  const double pi = std::numbers::pi;
  CHECK(iv::detail::trigamma(1.0) == Catch::Approx(pi * pi / 6.0).epsilon(1e-13));
  CHECK(iv::detail::trigamma(2.0) ==
        Catch::Approx(pi * pi / 6.0 - 1.0).epsilon(1e-13));
  for (const double x : {0.5, 3.7, 12.2, 40.0})
    CHECK(iv::detail::trigamma(x) - iv::detail::trigamma(x + 1.0) ==
          Catch::Approx(1.0 / (x * x)).epsilon(1e-12));
  CHECK_THROWS_AS(iv::detail::trigamma(0.0), std::invalid_argument);
}

TEST_CASE("convergence diagnostics: shape, tails, and the growth split") {
  const DressingSpec spec({0.0, 0.0, 0.3}, 0.1, 1.0);
  const InfravacuumMap map(ShellGrid(1.0, 24));
  const auto rep = iv::convergence_diagnostics(spec, map, 24, 1e-3, 24);

  CHECK(rep.angular_total ==
        Catch::Approx(iv::transverse_norm_sq_1d(spec)).epsilon(1e-8));

  // raw family grows along an exact line
  CHECK(rep.linear_r2 > 0.999);
  CHECK(rep.linear_r2 > 1.0 - 1e-9);
  CHECK(rep.linear_slope ==
        Catch::Approx(iv::shell_log() * rep.angular_total).epsilon(1e-9));

  // image family: increments follow the closed shell law and shrink like i^-2
  CHECK(rep.last_increment ==
        Catch::Approx(iv::shell_log() * rep.angular_total / 529.0).epsilon(1e-2));
  CHECK(rep.last_increment < 1e-3);
  for (int n = 2; n <= 24; ++n)
    CHECK(rep.t_v_norm_sq[n] > rep.t_v_norm_sq[n - 1]);

  // uniform shape constant and the fitted Cauchy constant
  CHECK(rep.k_shape >= rep.angular_total * (1.0 - 1e-12));
  CHECK(rep.shape_within_bound);
  CHECK(rep.k_shape <= rep.c_uniform_bound);
  CHECK(rep.cauchy_excess <= 0.0);
  CHECK(rep.cauchy_holds);
  CHECK(rep.k_fit == std::max(rep.k_shape, rep.k_cauchy));
  double prefix = 0.0;
  for (int n = 1; n <= 50; ++n) {
    const double suffix = rep.limit_estimate - prefix;
    CHECK(n * suffix <= rep.k_fit * (1.0 + 1e-10));
    prefix += rep.shell_norm_sq[n];
  }

  // limit estimate against the independent per-degree resummation: degree l
  // passes shells i < l untouched and is contracted by 1/i from shell l on,
  // so the limit is ln 2 * sum_l E_l ((l-1) + trigamma(l)).
  double mode_route = 0.0;
  {
    const AngularTable table = iv::angular_table(spec, 24);
    for (int l = 1; l <= 24; ++l)
      mode_route += table.degree_energy[l] *
                    ((l - 1) + iv::detail::trigamma(static_cast<double>(l)));
    mode_route *= iv::shell_log();
  }
  CHECK(rep.limit_estimate == Catch::Approx(mode_route).epsilon(1e-9));
  CHECK(rep.limit_estimate > rep.t_v_norm_sq[24]);

  // divergence of the conjugation-odd images
  CHECK(rep.superlinear);
  CHECK(rep.growth_exponent > 2.5);
  CHECK(rep.growth_exponent < 3.2);

  // angular truncation flags
  CHECK(rep.lmax_sufficient);
  CHECK(rep.angular_tail_estimate <= 1e-10);
  CHECK(rep.angular_tail_markov > rep.angular_tail_estimate);
  CHECK(rep.angular_tail_markov ==
        Catch::Approx(iv::shell_log() * rep.c_uniform_bound / 25.0).epsilon(1e-12));

  // fitted constants stable under doubling the angular truncation
  const auto rep48 = iv::convergence_diagnostics(spec, map, 24, 1e-3, 48);
  CHECK(std::abs(rep48.k_fit - rep.k_fit) <= 0.01 * rep.k_fit);
  CHECK(rep48.last_increment ==
        Catch::Approx(rep.last_increment).epsilon(1e-10));

  // in-grid shells: closed law equals the actual operator route
  const AngularTable table = iv::angular_table(spec, 24);
  for (const int i : {1, 2, 7, 23})
    CHECK(rep.shell_norm_sq[i] ==
          Catch::Approx(iv::norm_sq(iv::shell_image(spec, map, i, table)))
              .epsilon(1e-12));

  CHECK_THROWS_AS(iv::convergence_diagnostics(spec, map, 1, 1e-3, 24),
                  std::out_of_range);
  CHECK_THROWS_AS(iv::convergence_diagnostics(spec, map, 25, 1e-3, 24),
                  std::out_of_range);
  CHECK_THROWS_AS(iv::convergence_diagnostics(spec, map, 24, 0.0, 24),
                  std::invalid_argument);
  CHECK_THROWS_AS(iv::convergence_diagnostics(spec, map, 24, 1e-3, 24, 10),
                  std::invalid_argument);
}

TEST_CASE("convergence diagnostics: rest velocity degenerates cleanly") {
  const DressingSpec spec({0.0, 0.0, 0.0}, 0.1, 1.0);
  const InfravacuumMap map(ShellGrid(1.0, 12));
  const auto rep = iv::convergence_diagnostics(spec, map, 12, 1e-3, 12, 64);
  CHECK(rep.angular_total == 0.0);
  CHECK(rep.limit_estimate == 0.0);
  CHECK(rep.last_increment == 0.0);
  CHECK(rep.k_fit == 0.0);
  CHECK(rep.lmax_sufficient);
  CHECK_FALSE(rep.superlinear);
}

TEST_CASE("automatic degree selection tracks the requested tolerance") {
  const DressingSpec spec({0.0, 0.0, 0.3}, 0.1, 1.0);
  const auto choice = iv::choose_l_max(spec, 1e-3);
  CHECK(choice.lmax >= 1);
  CHECK(choice.lmax <= 16);
  CHECK_FALSE(choice.capped);
  CHECK(choice.tail_estimate <= 1e-4);
  CHECK(choice.geometric_ratio == Catch::Approx(0.023574).epsilon(1e-4));
  CHECK(choice.markov_bound > choice.tail_estimate);

  const DressingSpec fast({0.0, 0.0, 0.9}, 0.1, 1.0, 0.95);
  const auto tight = iv::choose_l_max(fast, 1e-12);
  CHECK_FALSE(tight.capped);
  CHECK(tight.lmax > choice.lmax);
  const auto capped = iv::choose_l_max(fast, 1e-12, 10);
  CHECK(capped.capped);
  CHECK(capped.lmax == 10);

  const DressingSpec rest({0.0, 0.0, 0.0}, 0.1, 1.0);
  CHECK(iv::choose_l_max(rest, 1e-6).lmax == 1);
  CHECK_THROWS_AS(iv::choose_l_max(spec, 0.0), std::invalid_argument);
}

TEST_CASE("degree-weighted energy stays below the analytic bound") {
  for (const double w : {0.1, 0.2, 0.3, 0.4}) {
    const DressingSpec spec({0.0, 0.0, w}, 0.1, 1.0);
    const AngularTable table = iv::angular_table(spec, 24);
    double weighted = 0.0;
    for (int l = 1; l <= 24; ++l)
      weighted += l * (l + 1.0) * table.degree_energy[l];
    const double bound =
        2.0 * (iv::l2_weighted_1d(spec) + 2.0 * iv::full_norm_sq_closed(spec));
    CHECK(weighted <= bound * (1.0 + 1e-9));
  }
}
