#pragma once
// Verification campaign: one runner per module, each producing a named set of
// pass/fail rows plus deterministic metrics and CSV artifacts.  All random
// sampling derives from the configured seed, so a fixed config reproduces the
// report byte for byte.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "infravac/campaign/config.hpp"
#include "infravac/campaign/report.hpp"
#include "infravac/dressing/central_sequence.hpp"
#include "infravac/dressing/dressing.hpp"
#include "infravac/dressing/witness.hpp"
#include "infravac/fieldspace/field_vector.hpp"
#include "infravac/groups/conjugate.hpp"
#include "infravac/harmonics/vector_sh.hpp"
#include "infravac/infravacuum/infravacuum_map.hpp"
#include "infravac/sectors/verify.hpp"

namespace infravac::campaign {

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline CheckRow make_row(std::string claim, bool passed, double measured,
                         double threshold, std::string det) {
  CheckRow r;
  r.claim = std::move(claim);
  r.passed = passed;
  r.measured = measured;
  r.threshold = threshold;
  r.detail = std::move(det);
  return r;
}

inline std::string num(double v) { return fmt_double(v); }

}  // namespace detail

// Finite-group claims: the normalizer dichotomy over the whole catalogue,
// randomized cross-checks of the two class constructions, merging instances
// with a negative control, and optional validation of an external table.
inline CheckSet run_groups(const CampaignConfig& cfg) {
  using namespace infravac::groups;
  const detail::Stopwatch sw;
  CheckSet set;
  set.name = "groups";
  std::mt19937_64 rng(cfg.seed ^ 0x47525053ULL);

  const auto catalogue = small_group_catalogue();
  std::vector<std::vector<Subgroup>> subs;
  subs.reserve(catalogue.size());
  for (const auto& g : catalogue) subs.push_back(all_subgroups(g));
  set.metrics["catalogue-size"] = static_cast<double>(catalogue.size());

  {  // R < S strictly forces emptiness; R = S recovers the classical object.
    int proper = 0, equal = 0, violations = 0;
    std::string first_bad;
    for (std::size_t gi = 0; gi < catalogue.size(); ++gi) {
      const auto& g = catalogue[gi];
      for (const auto& r : subs[gi])
        for (const auto& s : subs[gi]) {
          if (!subset_of(r, s)) continue;
          const auto n = relative_normalizer(g, r, s);
          if (r == s) {
            ++equal;
            if (n != classical_normalizer(g, r)) {
              ++violations;
              if (first_bad.empty())
                first_bad = g.name() + ": equal pair disagrees with the "
                            "classical normalizer";
            }
          } else {
            ++proper;
            if (!n.empty()) {
              ++violations;
              if (first_bad.empty())
                first_bad = g.name() + ": proper pair has nonempty normalizer";
            }
          }
        }
    }
    set.metrics["proper-pairs"] = proper;
    set.metrics["equal-pairs"] = equal;
    set.rows.push_back(detail::make_row(
        "proper-pair-normalizer-empty", violations == 0, violations, 0.0,
        violations == 0
            ? std::to_string(proper) + " proper pairs empty, " +
                  std::to_string(equal) +
                  " equal pairs match the classical normalizer, across " +
                  std::to_string(catalogue.size()) + " catalogue groups"
            : first_bad));
  }

  {  // Direct-enumeration classes against the orbit form, and the fold-back
     // of the third and fourth iterates onto the first and second.
    int done = 0, violations = 0;
    std::string first_bad;
    std::uniform_int_distribution<std::size_t> gpick(0, catalogue.size() - 1);
    while (done < cfg.oracle_actions) {
      const std::size_t gi = gpick(rng);
      const auto& g = catalogue[gi];
      if (g.order() < 2) continue;
      std::uniform_int_distribution<std::size_t> hpick(0, subs[gi].size() - 1);
      const auto make_action = [&]() {
        switch (rng() % 3) {
          case 0: return GroupAction::regular(g);
          case 1: return GroupAction::cosets(g, subs[gi][hpick(rng)]);
          default:
            return GroupAction::disjoint_union(
                GroupAction::regular(g),
                GroupAction::cosets(g, subs[gi][hpick(rng)]));
        }
      };
      const GroupAction act = make_action();
      std::uniform_int_distribution<int> ppick(0, act.points() - 1),
          epick(0, g.order() - 1);
      const int x0 = ppick(rng);
      const int a = epick(rng);
      const int x = act.apply(x0, epick(rng));

      const auto direct = conjugate_class_direct(act, x, x0, a);
      const auto orbit_form = conjugate_class_orbit(act, x, x0, a).members;
      const auto it2 = iterated_conjugate_class(act, x, x0, a, 2);
      const auto snd = second_conjugate_class_orbit(act, x, x0, a).members;
      const auto it3 = iterated_conjugate_class(act, x, x0, a, 3);
      const auto it4 = iterated_conjugate_class(act, x, x0, a, 4);
      const bool ok = direct == orbit_form && it2 == snd && it3 == direct &&
                      it4 == it2;
      if (!ok) {
        ++violations;
        if (first_bad.empty())
          first_bad = g.name() + ": class routes disagree at x=" +
                      std::to_string(x) + " x0=" + std::to_string(x0) +
                      " a=" + std::to_string(a);
      }
      ++done;
    }
    set.metrics["oracle-trials"] = done;
    set.rows.push_back(detail::make_row(
        "class-oracle-equivalences", violations == 0, violations, 0.0,
        violations == 0
            ? std::to_string(done) +
                  " randomized actions: direct enumeration matches the orbit "
                  "route, third and fourth iterates fold back onto first and "
                  "second"
            : first_bad));
  }

  {  // Backgrounds inside the normalizer merge translate classes.
    constexpr int instance_cap = 150;
    int instances = 0, violations = 0;
    std::string first_bad;
    for (std::size_t gi = 0; gi < catalogue.size() && instances < instance_cap;
         ++gi) {
      const auto& g = catalogue[gi];
      if (g.order() < 2) continue;
      for (const auto& h : subs[gi]) {
        if (instances >= instance_cap) break;
        if (static_cast<int>(h.size()) == g.order()) continue;
        const GroupAction act = GroupAction::cosets(g, h);
        int x0 = -1;
        for (int x = 0; x < act.points(); ++x)
          if (stabilizer(act, x) == h) {
            x0 = x;
            break;
          }
        if (x0 < 0) continue;
        const auto n = classical_normalizer(g, h);
        std::set<int> picks = {n.front(), n[n.size() / 2], n.back()};
        for (int a : picks) {
          if (instances >= instance_cap) break;
          const auto rep = check_merging_theorem(act, x0, h, h, a);
          const auto eq = check_prop_equivalences(act, x0, a);
          ++instances;
          if (!(rep.hypotheses_hold() && rep.conclusions_hold() &&
                eq.all_hold())) {
            ++violations;
            if (first_bad.empty())
              first_bad = g.name() + ": merging fails for a=" +
                          std::to_string(a) + ", subgroup size " +
                          std::to_string(h.size());
          }
        }
      }
    }
    set.metrics["merging-instances"] = instances;
    set.rows.push_back(detail::make_row(
        "merging-under-normalizer", violations == 0, violations, 0.0,
        violations == 0
            ? std::to_string(instances) +
                  " instances: hypotheses, translate/orbit conclusions and "
                  "the point/class/second-class equivalences all hold"
            : first_bad));
  }

  {  // A background outside the normalizer must break the conclusions.
    bool found = false;
    int observed = 0;
    std::string where;
    for (std::size_t gi = 0; gi < catalogue.size() && !found; ++gi) {
      const auto& g = catalogue[gi];
      for (const auto& h : subs[gi]) {
        if (h.size() == 1 || static_cast<int>(h.size()) == g.order()) continue;
        const auto n = classical_normalizer(g, h);
        if (static_cast<int>(n.size()) == g.order()) continue;
        int a = -1;
        for (int e = 0; e < g.order(); ++e)
          if (!contains(n, e)) {
            a = e;
            break;
          }
        const GroupAction act = GroupAction::cosets(g, h);
        int x0 = -1;
        for (int x = 0; x < act.points(); ++x)
          if (stabilizer(act, x) == h) {
            x0 = x;
            break;
          }
        if (a < 0 || x0 < 0) continue;
        const auto rep = check_merging_theorem(act, x0, h, h, a);
        if (!rep.a_in_relative_normalizer && !rep.conclusions_hold()) {
          found = true;
          observed = static_cast<int>(rep.violations.size());
          where = g.name() + ", subgroup size " + std::to_string(h.size()) +
                  ", background " + std::to_string(a);
          break;
        }
      }
    }
    set.rows.push_back(detail::make_row(
        "merging-negative-control", found, observed, 1.0,
        found ? "background outside the normalizer yields " +
                    std::to_string(observed) + " conclusion violations (" +
                    where + "); sense: >="
              : "no violating instance found in the catalogue"));
  }

  if (!cfg.group_table.empty()) {
    try {
      std::ifstream in(cfg.group_table);
      if (!in)
        throw std::runtime_error("group table: cannot open '" +
                                 cfg.group_table + "'");
      const auto g = FiniteGroup::parse(in, "external");
      set.rows.push_back(detail::make_row(
          "external-table-valid", true, g.order(), 1.0,
          "order " + std::to_string(g.order()) +
              " table passes identity, inverse and associativity validation; "
              "sense: >="));
    } catch (const std::exception& e) {
      set.rows.push_back(
          detail::make_row("external-table-valid", false, 0.0, 1.0, e.what()));
    }
  }

  set.elapsed_seconds = sw.seconds();
  return set;
}

// Angular basis claims: orthonormality of the tangential harmonics, pointwise
// transversality, and the degree-energy ladder.
inline CheckSet run_harmonics(const CampaignConfig& cfg) {
  const detail::Stopwatch sw;
  CheckSet set;
  set.name = "harmonics";
  std::mt19937_64 rng(cfg.seed ^ 0x4841524dULL);

  {
    const auto quad = harmonics::SphericalQuadrature::build(18);
    const auto g = harmonics::gram_matrix(8, quad);
    set.metrics["gram-modes"] = static_cast<double>(g.modes.size());
    set.rows.push_back(detail::make_row(
        "gram-identity", g.max_deviation <= cfg.tol.gram, g.max_deviation,
        cfg.tol.gram,
        std::to_string(g.modes.size()) +
            " modes through degree 8, quadrature order 18; worst entry "
            "deviation from the identity"));
  }

  {
    std::uniform_real_distribution<double> uct(-0.999, 0.999),
        uphi(0.0, 2.0 * std::numbers::pi);
    double worst = 0.0;
    const int trials = 500;
    for (int t = 0; t < trials; ++t) {
      const double ct = uct(rng), phi = uphi(rng);
      const int l = 1 + static_cast<int>(rng() % 8);
      std::uniform_int_distribution<int> mpick(-l, l);
      const harmonics::AngularMode mode(
          l, mpick(rng), rng() % 2 ? harmonics::Pol::plus : harmonics::Pol::minus);
      const Vec3c v = harmonics::vector_Y(mode, ct, phi);
      const Vec3 k = unit_from_angles(ct, phi);
      worst = std::max(worst, std::abs(cdot(to_complex(k), v)));
    }
    set.rows.push_back(detail::make_row(
        "transversality", worst <= cfg.tol.transversality, worst,
        cfg.tol.transversality,
        std::to_string(trials) +
            " random directions and modes through degree 8; worst radial "
            "component"));
  }

  {
    const auto quad = harmonics::SphericalQuadrature::build(24);
    double worst_rel = 0.0;
    for (int l = 1; l <= 8; ++l)
      for (int m : {0, 1, l}) {
        const double got = quad.integrate([&](double ct, double phi) {
          const harmonics::ScalarHarmonicsAtNode sc(l, ct, phi);
          const double st2 = 1.0 - ct * ct;
          return std::norm(sc.dY_dtheta(l, m)) +
                 m * m / st2 * std::norm(sc.Y(l, m));
        });
        const double target = static_cast<double>(l) * (l + 1);
        worst_rel = std::max(worst_rel, std::abs(got - target) / target);
      }
    set.rows.push_back(detail::make_row(
        "gradient-ladder", worst_rel <= cfg.tol.gradient_energy, worst_rel,
        cfg.tol.gradient_energy,
        "tangential gradient energy vs l(l+1), degrees 1..8, m in {0, 1, l}; "
        "worst relative error"));
  }

  set.elapsed_seconds = sw.seconds();
  return set;
}

// Scaling-map claims: defining identities on random vectors, the contracting
// branch norm, and the truncated expanding-branch norms.
inline CheckSet run_kpr(const CampaignConfig& cfg) {
  const detail::Stopwatch sw;
  CheckSet set;
  set.name = "kpr";
  std::mt19937_64 rng(cfg.seed ^ 0x4b505221ULL);
  const InfravacuumMap map{ShellGrid(cfg.kappa, cfg.n_shells)};

  try {
    const auto cert =
        certify_map_identities(map, 100, cfg.tol.map_identity, cfg.l_max, rng);
    set.metrics["pairing-dev"] = cert.max_pairing_dev;
    set.metrics["roundtrip-dev"] = cert.max_roundtrip_dev;
    set.metrics["symplectic-dev"] = cert.max_symplectic_dev;
    set.metrics["inverse-dev"] = cert.max_inverse_dev;
    set.rows.push_back(detail::make_row(
        "map-identities", cert.worst() <= cfg.tol.map_identity, cert.worst(),
        cfg.tol.map_identity,
        std::to_string(cert.samples) +
            " random vectors: pairing, branch round trips, symplectic "
            "invariance and two-sided inverse"));
  } catch (const std::exception& e) {
    set.rows.push_back(detail::make_row(
        "map-identities", false, std::numeric_limits<double>::quiet_NaN(),
        cfg.tol.map_identity, e.what()));
  }

  {
    const double bound = norm_bound_t1(map, 200, cfg.l_max, rng);
    set.rows.push_back(detail::make_row(
        "contracting-branch-norm", bound <= 1.0 + cfg.tol.branch_norm, bound,
        1.0 + cfg.tol.branch_norm,
        "largest ratio over 200 random conjugation-even vectors"));
  }

  {
    std::set<int> truncations = {4, std::min(12, cfg.n_shells), cfg.n_shells};
    double worst_rel = 0.0;
    std::string seen;
    for (int n : truncations) {
      const double est =
          t2_norm_power_iteration(map, n, std::min(cfg.l_max, 16), 400, rng);
      worst_rel = std::max(worst_rel, std::abs(est - n) / n);
      if (!seen.empty()) seen += ", ";
      seen += std::to_string(n) + " -> " + detail::num(est);
    }
    set.rows.push_back(detail::make_row(
        "expanding-branch-norm", worst_rel <= cfg.tol.truncated_norm,
        worst_rel, cfg.tol.truncated_norm,
        "power iteration on truncations: " + seen +
            "; worst relative deviation from the shell count"));
  }

  set.artifacts["kpr_multipliers.csv"] =
      map.multiplier_csv(std::min(cfg.l_max, 12));
  set.elapsed_seconds = sw.seconds();
  return set;
}

// Dressing-family claims: Cauchy decay of the image family with a uniform
// shape constant, threshold on the final increment, divergence of the raw
// family, and the two-route angular energy identity.
inline CheckSet run_dressing(const CampaignConfig& cfg) {
  const detail::Stopwatch sw;
  CheckSet set;
  set.name = "dressing";
  const InfravacuumMap map{ShellGrid(cfg.kappa, cfg.n_shells)};
  const DressingSpec spec(cfg.velocities.front(), cfg.alpha, cfg.kappa,
                          cfg.v_max);
  const auto diag = convergence_diagnostics(spec, map, cfg.n_shells,
                                            cfg.tol.increment, cfg.l_max);

  set.metrics["k-shape"] = diag.k_shape;
  set.metrics["k-cauchy"] = diag.k_cauchy;
  set.metrics["k-fit"] = diag.k_fit;
  set.metrics["limit-estimate"] = diag.limit_estimate;
  set.metrics["angular-total"] = diag.angular_total;
  set.metrics["linear-slope"] = diag.linear_slope;
  set.metrics["growth-exponent"] = diag.growth_exponent;

  set.rows.push_back(detail::make_row(
      "cauchy-dominated", diag.cauchy_holds && diag.cauchy_excess <= 0.0,
      diag.cauchy_excess, 0.0,
      "suffix sums bounded by K/n over " + std::to_string(diag.horizon) +
          " shells; excess of the Cauchy constant over the shape-implied one"));

  set.rows.push_back(detail::make_row(
      "uniform-shape-bound", diag.shape_within_bound, diag.k_fit,
      diag.c_uniform_bound,
      "fitted per-shell constant against the closed-form uniform bound"));

  {
    const auto rediag = convergence_diagnostics(spec, map, cfg.n_shells,
                                                cfg.tol.increment, 2 * cfg.l_max);
    const double pct =
        100.0 * std::abs(diag.k_fit - rediag.k_fit) / rediag.k_fit;
    set.rows.push_back(detail::make_row(
        "constant-fit-stable", pct <= cfg.tol.constant_stability_pct, pct,
        cfg.tol.constant_stability_pct,
        "percent shift of the fitted constant when the angular cutoff doubles "
        "to " + std::to_string(2 * cfg.l_max)));
  }

  set.rows.push_back(detail::make_row(
      "increment-threshold", diag.last_increment <= cfg.tol.increment,
      diag.last_increment, cfg.tol.increment,
      "image-norm increment at depth " + std::to_string(diag.depth)));

  set.rows.push_back(detail::make_row(
      "angular-resolution", diag.lmax_sufficient, diag.angular_tail_estimate,
      cfg.tol.increment / 10.0,
      "geometric extrapolation of the degree tail beyond cutoff " +
          std::to_string(diag.lmax)));

  set.rows.push_back(detail::make_row(
      "linear-growth", diag.linear_r2 >= cfg.tol.linear_r2, diag.linear_r2,
      cfg.tol.linear_r2,
      "R^2 of the linear fit to the raw family norms, slope " +
          detail::num(diag.linear_slope) + "; sense: >="));

  set.rows.push_back(detail::make_row(
      "superlinear-image-growth", diag.superlinear, diag.growth_exponent, 1.0,
      "log-log growth exponent of the conjugation-odd image family; "
      "sense: >"));

  {
    double worst_rel = 0.0;
    for (double s : {0.1, 0.2, 0.3, 0.4}) {
      const DressingSpec sp({0.0, 0.0, s}, cfg.alpha, cfg.kappa, cfg.v_max);
      const auto routes = angular_l2_weighted(sp);
      worst_rel = std::max(worst_rel,
                           std::abs(routes.integral_route - routes.mode_route) /
                               routes.integral_route);
    }
    set.rows.push_back(detail::make_row(
        "l2-dual-routes", worst_rel <= cfg.tol.l2_routes, worst_rel,
        cfg.tol.l2_routes,
        "derivative-form integral vs degree-weighted mode sum at speeds "
        "0.1, 0.2, 0.3, 0.4; worst relative gap"));
  }

  {
    std::string csv = "n,v_norm_sq,t_v_norm_sq,t_iv_norm_sq,increment\n";
    for (std::size_t n = 0; n < diag.v_norm_sq.size(); ++n) {
      csv += std::to_string(n + 1) + ',' + detail::num(diag.v_norm_sq[n]) +
             ',' + detail::num(diag.t_v_norm_sq[n]) + ',' +
             detail::num(diag.t_iv_norm_sq[n]) + ',' +
             detail::num(n == 0 ? 0.0 : diag.increment[n - 1]) + '\n';
    }
    set.artifacts["dressing_family.csv"] = csv;

    std::string shells = "shell,image_norm_sq\n";
    const std::size_t cap =
        std::min<std::size_t>(diag.shell_norm_sq.size(), 256);
    for (std::size_t i = 0; i < cap; ++i)
      shells +=
          std::to_string(i + 1) + ',' + detail::num(diag.shell_norm_sq[i]) + '\n';
    set.artifacts["dressing_shells.csv"] = shells;
  }

  set.elapsed_seconds = sw.seconds();
  return set;
}

// Witness claims: the two-route pairing identity, strict velocity separation
// on the window, positivity of the aberration distance off the velocity
// plane, and decay of the scaled commutators.
inline CheckSet run_witness(const CampaignConfig& cfg) {
  const detail::Stopwatch sw;
  CheckSet set;
  set.name = "witness";
  std::mt19937_64 rng(cfg.seed ^ 0x5749544eULL);

  const WitnessSpec wspec(cfg.witness_w, cfg.witness_w_prime,
                          cfg.witness_sigma, cfg.kappa, cfg.witness_amplitude,
                          cfg.alpha, cfg.witness_exclusion_deg);
  const auto res = superselection_witness(wspec);
  set.metrics["lhs"] = res.lhs;
  set.metrics["rhs"] = res.rhs;
  set.metrics["chi-integral"] = res.chi_integral;
  set.metrics["window-fraction"] = res.window_fraction;

  set.rows.push_back(detail::make_row(
      "witness-dual-routes", res.relative_gap <= cfg.tol.witness,
      res.relative_gap, cfg.tol.witness,
      "windowed quadrature route " + detail::num(res.lhs) +
          " vs closed form " + detail::num(res.rhs) + "; relative gap"));

  {
    const bool ok =
        res.window_nonzero && res.lhs != 0.0 && res.rhs != 0.0;
    set.rows.push_back(detail::make_row(
        "witness-nonzero", ok, std::abs(res.rhs), 0.0,
        "window carries weight fraction " + detail::num(res.window_fraction) +
            " and both routes are nonzero; sense: >"));
  }

  set.rows.push_back(detail::make_row(
      "velocity-separation", res.separation_ok, res.min_separation_sq, 0.0,
      "smallest squared aberration separation on the window support; "
      "sense: >"));

  {
    std::uniform_real_distribution<double> ucomp(-cfg.v_max, cfg.v_max),
        uct(-1.0, 1.0), uphi(0.0, 2.0 * std::numbers::pi);
    const auto draw_ball = [&]() {
      while (true) {
        const Vec3 v{ucomp(rng), ucomp(rng), ucomp(rng)};
        if (norm(v) <= cfg.v_max) return v;
      }
    };
    int done = 0;
    double min_d = std::numeric_limits<double>::infinity();
    while (done < cfg.offspan_trials) {
      const Vec3 w1 = draw_ball(), w2 = draw_ball();
      const Vec3 d{w1[0] - w2[0], w1[1] - w2[1], w1[2] - w2[2]};
      if (norm(d) < 1e-3) continue;
      const Vec3 n = cross(w1, w2);
      if (norm(n) < 1e-6) continue;
      const Vec3 khat = unit_from_angles(uct(rng), uphi(rng));
      if (std::abs(dot(khat, n)) / norm(n) < 0.05) continue;
      min_d = std::min(min_d, aberration_distance(w1, w2, khat));
      ++done;
    }
    set.rows.push_back(detail::make_row(
        "offspan-aberration-distance", min_d > 0.0, min_d, 0.0,
        std::to_string(done) +
            " random velocity pairs probed off their plane; smallest "
            "aberration distance; sense: >"));
  }

  {
    const DressingSpec cspec(cfg.witness_w, cfg.alpha, cfg.kappa, cfg.v_max);
    FieldVector f{ShellGrid(cfg.kappa, cfg.n_shells)};
    f.set({1, ChannelKind::xi, AngularMode(1, 0, Pol::plus)}, {0.7, 0.1});
    f.set({2, ChannelKind::xi, AngularMode(1, 1, Pol::plus)}, {0.3, -0.2});
    f.set({1, ChannelKind::aux, AngularMode(1, 0, Pol::plus)}, {0.2, 0.0});
    f.set({2, ChannelKind::xi, AngularMode(2, 1, Pol::minus)}, {0.0, 0.4});
    std::vector<double> s_grid;
    for (int k = 0; k <= cfg.commutator_max_exponent; ++k)
      s_grid.push_back(std::ldexp(1.0, k));
    const auto rep =
        central_sequence_check(cspec, bundled_scaling_probe(), f, s_grid);
    set.metrics["limit-pairing"] = rep.limit_pairing;
    set.metrics["angular-factor"] = rep.angular_factor;

    set.rows.push_back(detail::make_row(
        "commutator-decay",
        rep.commutators_eventually_decreasing &&
            rep.final_commutator <= cfg.tol.commutator,
        rep.final_commutator, cfg.tol.commutator,
        "commutator norm at scale 2^" +
            std::to_string(cfg.commutator_max_exponent) +
            ", decreasing over the final scales"));

    const double rel = std::abs(rep.pairings.back() - rep.limit_pairing) /
                       std::abs(rep.limit_pairing);
    set.rows.push_back(detail::make_row(
        "pairing-limit", rel <= 1e-4, rel, 1e-4,
        "scaled pairing at the last scale vs the closed-form limit " +
            detail::num(rep.limit_pairing) + "; relative"));

    std::string csv = "s,pairing,test_pairing,commutator\n";
    for (std::size_t j = 0; j < rep.s_values.size(); ++j)
      csv += detail::num(rep.s_values[j]) + ',' + detail::num(rep.pairings[j]) +
             ',' + detail::num(rep.test_pairings[j]) + ',' +
             detail::num(rep.commutator_norms[j]) + '\n';
    set.artifacts["witness_scales.csv"] = csv;
  }

  set.elapsed_seconds = sw.seconds();
  return set;
}

// Sector claims: certify the direction registry, then machine-check the
// label separation, merging and class-iteration statements.
inline CheckSet run_sectors(const CampaignConfig& cfg) {
  const detail::Stopwatch sw;
  CheckSet set;
  set.name = "sectors";
  try {
    const InfravacuumMap map{ShellGrid(cfg.kappa, cfg.n_shells)};
    std::vector<DressingSpec> specs;
    specs.reserve(cfg.velocities.size());
    for (const Vec3& v : cfg.velocities)
      specs.emplace_back(v, cfg.alpha, cfg.kappa, cfg.v_max);
    sectors::DressingDirectionRegistry registry(map, specs, cfg.l_max,
                                                cfg.sector_depth);
    registry.certify(cfg.tol.sector_certify);
    set.rows.push_back(detail::make_row(
        "registry-certification", true, registry.independence_min_gap(), 1e-10,
        std::to_string(specs.size()) +
            " directions certified: per-direction convergence plus pairwise "
            "independence gap; sense: >"));

    const auto rep = sectors::verify_sector_theorems(registry);
    set.metrics["independence-min-gap"] = rep.independence_min_gap;
    for (std::size_t j = 0; j < rep.direction_image_norms.size(); ++j)
      set.metrics["direction-" + std::to_string(j) + "-image-norm"] =
          rep.direction_image_norms[j];
    for (const auto& c : rep.checks)
      set.rows.push_back(detail::make_row(c.claim, c.passed,
                                          c.passed ? 1.0 : 0.0, 1.0, c.detail));
  } catch (const std::exception& e) {
    set.rows.push_back(detail::make_row("registry-certification", false, 0.0,
                                        1e-10, e.what()));
  }
  set.elapsed_seconds = sw.seconds();
  return set;
}

inline std::vector<CheckSet> run_all(const CampaignConfig& cfg) {
  return {run_groups(cfg),  run_harmonics(cfg), run_kpr(cfg),
          run_dressing(cfg), run_witness(cfg),   run_sectors(cfg)};
}

}  // namespace infravac::campaign
