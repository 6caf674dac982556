// Coset-model group calculus: certified dressing basis, exact term
// cancellation in the symbolic transpose powers, decidable sector labels,
// conjugate-class descriptors in the identity and shifted frames, and the
// bundled theorem verification report.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "infravac/sectors/dressing_basis.hpp"
#include "infravac/sectors/model_group.hpp"
#include "infravac/sectors/verify.hpp"

namespace iv = infravac;
namespace sec = infravac::sectors;
using iv::AngularMode;
using iv::ChannelIndex;
using iv::ChannelKind;
using iv::DressingSpec;
using iv::FieldVector;
using iv::InfravacuumMap;
using iv::Pol;
using iv::ShellGrid;
using iv::Vec3;
using sec::ClassDescriptor;
using sec::ConjugateClassPair;
using sec::DressingDirectionRegistry;
using sec::DualVector;
using sec::ModelGroupElement;
using sec::SectorLabel;

namespace {

std::mt19937_64 rng(0x5ec7be57u);

const int kShells = 16;
const int kDepth = 12;
const int kLmax = 12;

std::vector<DressingSpec> test_specs() {
  return {DressingSpec(Vec3{0.0, 0.0, 0.3}, 0.1, 1.0),
          DressingSpec(Vec3{0.25, 0.0, 0.0}, 0.1, 1.0),
          DressingSpec(Vec3{0.1, 0.2, -0.1}, 0.1, 1.0)};
}

// one certified basis shared by the whole suite
const DressingDirectionRegistry& basis() {
  static DressingDirectionRegistry reg = [] {
    DressingDirectionRegistry r(InfravacuumMap(ShellGrid(1.0, kShells)),
                                test_specs(), kLmax, kDepth);
    r.certify(1e-3);
    return r;
  }();
  return reg;
}

FieldVector random_square(const DressingDirectionRegistry& reg) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_int_distribution<int> shell(1, reg.grid().n_shells);
  std::uniform_int_distribution<int> degree(1, 4);
  std::uniform_int_distribution<int> flip(0, 1);
  FieldVector f(reg.grid());
  for (int n = 0; n < 5; ++n) {
    const int l = degree(rng);
    std::uniform_int_distribution<int> order(-l, l);
    f.set({shell(rng), flip(rng) ? ChannelKind::xi : ChannelKind::aux,
           AngularMode(l, order(rng), flip(rng) ? Pol::plus : Pol::minus)},
          {coef(rng), coef(rng)});
  }
  return f;
}

// exact on the formal terms, roundoff-tolerant on the square parts
void check_dual_close(const DualVector& a, const DualVector& b,
                      double tol = 1e-12) {
  CHECK(a.dressing_terms() == b.dressing_terms());
  const double scale = 1.0 + iv::norm(a.square_part());
  CHECK(iv::norm(a.square_part() - b.square_part()) <= tol * scale);
}

void check_element_close(const ModelGroupElement& a, const ModelGroupElement& b,
                         double tol = 1e-12) {
  CHECK(a.k == b.k);
  check_dual_close(a.v, b.v, tol);
}

ModelGroupElement random_element(const DressingDirectionRegistry& reg,
                                 int max_power = 2) {
  std::uniform_int_distribution<int> kdist(-max_power, max_power);
  std::uniform_int_distribution<int> dir(0, reg.size() - 1);
  std::uniform_int_distribution<int> term_power(0, 2);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  DualVector v = DualVector::from_square(reg, random_square(reg));
  v += DualVector::direction(reg, dir(rng), coef(rng), term_power(rng));
  v += DualVector::direction(reg, dir(rng), coef(rng), term_power(rng));
  return {v, kdist(rng)};
}

}  // namespace

TEST_CASE("direction basis validation and certification") {
  const auto& reg = basis();
  CHECK(reg.size() == 3);
  CHECK(reg.certified());
  CHECK(reg.depth() == kDepth);
  CHECK(reg.power_bound() == 8);

  const InfravacuumMap map(ShellGrid(1.0, kShells));
  const DressingSpec unit(Vec3{0.0, 0.0, 0.3}, 0.1, 1.0);

  // construction guards
  CHECK_THROWS_AS(DressingDirectionRegistry(map, {}, kLmax, kDepth),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      DressingDirectionRegistry(
          map, {DressingSpec(Vec3{0.0, 0.0, 0.0}, 0.1, 1.0)}, kLmax, kDepth),
      std::invalid_argument);
  CHECK_THROWS_AS(DressingDirectionRegistry(map, {unit, unit}, kLmax, kDepth),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      DressingDirectionRegistry(
          map, {DressingSpec(Vec3{0.0, 0.0, 0.3}, 0.1, 2.0)}, kLmax, kDepth),
      std::invalid_argument);
  CHECK_THROWS_AS(DressingDirectionRegistry(map, {unit}, kLmax, 1),
                  std::out_of_range);
  CHECK_THROWS_AS(DressingDirectionRegistry(map, {unit}, kLmax, kShells + 1),
                  std::out_of_range);
  CHECK_THROWS_AS(DressingDirectionRegistry(map, {unit}, kLmax, kDepth, 0),
                  std::invalid_argument);

  // uncertified registries reject materialization and certificates
  DressingDirectionRegistry raw(map, {unit}, kLmax, kDepth);
  CHECK_FALSE(raw.certified());
  CHECK_THROWS_AS(raw.materialized(0, -1), std::runtime_error);
  CHECK_THROWS_AS(raw.certificate(0), std::runtime_error);
  CHECK_THROWS_AS(sec::verify_sector_theorems(raw), std::runtime_error);
  CHECK_THROWS_AS(sec::DualVector::direction(raw, 0, 1.0, -1),
                  std::runtime_error);
}

TEST_CASE("certificates match the convergence diagnostics") {
  const auto& reg = basis();
  for (int j = 0; j < reg.size(); ++j) {
    const auto& cert = reg.certificate(j);
    CHECK(cert.converged);
    const auto rep = iv::convergence_diagnostics(
        reg.spec(j), reg.map(), kDepth, 1e-3, kLmax);
    CHECK(cert.t_image_norm_sq == rep.limit_estimate);
    CHECK(cert.t_image_norm_sq > 0.0);
    CHECK(cert.raw_slope ==
          Catch::Approx(iv::shell_log() * reg.table(j).total).epsilon(1e-12));
  }
  CHECK(reg.independence_min_gap() > 1e-4);

  // independence is a statement about actual truncated families: pairwise
  // differences grow linearly in the depth with slope ln 2 * gap
  for (int a = 0; a < reg.size(); ++a)
    for (int b = 0; b < a; ++b) {
      const int n = 7;
      const FieldVector diff =
          iv::dressing_approximant(reg.spec(a), reg.grid(), n, reg.table(a)) -
          iv::dressing_approximant(reg.spec(b), reg.grid(), n, reg.table(b));
      const double gap = iv::norm_sq(diff) / ((n - 1) * iv::shell_log());
      CHECK(gap >= reg.independence_min_gap() * (1.0 - 1e-9));
    }
}

TEST_CASE("materialized images are cached fixed representatives") {
  const auto& reg = basis();
  const FieldVector& first = reg.materialized(1, -1);
  CHECK(&first == &reg.materialized(1, -1));  // same object every time

  // the power -1 image is the scaling map applied to the truncated family
  const FieldVector direct = reg.map().apply_t(
      iv::dressing_approximant(reg.spec(1), reg.grid(), kDepth, reg.table(1)));
  CHECK(iv::norm(first - direct) <= 1e-15);

  // deeper powers iterate the map
  const FieldVector twice = reg.map().apply_t(reg.map().apply_t(
      iv::dressing_approximant(reg.spec(0), reg.grid(), kDepth, reg.table(0))));
  CHECK(iv::norm(reg.materialized(0, -2) - twice) <= 1e-15);

  CHECK_THROWS_AS(reg.materialized(0, 0), std::out_of_range);
  CHECK_THROWS_AS(reg.materialized(0, -9), std::out_of_range);
  CHECK_THROWS_AS(reg.materialized(3, -1), std::out_of_range);
}

TEST_CASE("dual vector calculus with exact term bookkeeping") {
  const auto& reg = basis();

  DualVector v = DualVector::direction(reg, 0, 1.0);
  CHECK_FALSE(v.square_summable());
  CHECK(v.coefficient(0, 0) == 1.0);
  CHECK(v.square_part().support_size() == 0);

  // a negative transpose power reclassifies the term as square-summable:
  // the dressing coefficient at power zero vanishes and the numeric
  // realization is the certified image
  const DualVector image = sec::transpose_action(-1, v);
  CHECK(image.square_summable());
  CHECK(image.coefficient(0, 0) == 0.0);
  CHECK(image.coefficient(0, -1) == 1.0);
  CHECK(iv::norm(image.square_realization() - reg.materialized(0, -1)) == 0.0);

  // positive powers stay symbolic and admit no numeric realization
  const DualVector lifted = sec::transpose_action(1, v);
  CHECK(lifted.coefficient(0, 1) == 1.0);
  CHECK(lifted.square_part().support_size() == 0);
  CHECK_FALSE(lifted.square_summable());
  CHECK_THROWS_AS(lifted.square_realization(), std::logic_error);

  // transpose powers compose to the identity: terms exactly, squares to ulps
  DualVector mixed = DualVector::from_square(reg, random_square(reg));
  mixed += DualVector::direction(reg, 2, 0.75);
  mixed += DualVector::direction(reg, 1, -1.25, 1);
  check_dual_close(sec::transpose_action(-2, sec::transpose_action(2, mixed)),
                   mixed);
  check_dual_close(sec::transpose_action(1, sec::transpose_action(-1, mixed)),
                   mixed);

  // term arithmetic cancels exactly
  DualVector sum = DualVector::direction(reg, 1, 2.0) +
                   DualVector::direction(reg, 1, 1.0);
  CHECK(sum.coefficient(1, 0) == 3.0);
  sum -= DualVector::direction(reg, 1, 3.0);
  CHECK(sum.square_summable());

  DualVector diff = sec::transpose_action(1, v) - sec::transpose_action(1, v);
  CHECK(diff.square_summable());
  CHECK(diff.square_part().support_size() == 0);

  // scaling
  DualVector scaled = 2.0 * DualVector::direction(reg, 2, 1.5);
  CHECK(scaled.coefficient(2, 0) == 3.0);
  scaled *= 0.0;
  CHECK(scaled.square_summable());

  // guards: foreign basis, bad grids, powers outside the certified bound
  DressingDirectionRegistry other(InfravacuumMap(ShellGrid(1.0, kShells)),
                                  test_specs(), kLmax, kDepth);
  other.certify(1e-3);
  CHECK_THROWS_AS(v + DualVector::direction(other, 0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(DualVector::from_square(reg, FieldVector(ShellGrid(1.0, 8))),
                  std::invalid_argument);
  CHECK_THROWS_AS(DualVector::direction(reg, 3, 1.0), std::out_of_range);
  CHECK_THROWS_AS(sec::transpose_action(9, v), std::out_of_range);
  CHECK_THROWS_AS(
      sec::transpose_action(1, DualVector::direction(reg, 0, 1.0, 8)),
      std::out_of_range);
}

TEST_CASE("model group law, inverses and associativity") {
  const auto& reg = basis();
  const ModelGroupElement id = sec::model_identity(reg);

  for (int trial = 0; trial < 20; ++trial) {
    const ModelGroupElement g = random_element(reg);
    check_element_close(sec::model_multiply(id, g), g, 1e-15);
    check_element_close(sec::model_multiply(g, id), g, 1e-15);

    // both inverse products collapse to the identity
    const ModelGroupElement left =
        sec::model_multiply(sec::model_inverse(g), g);
    const ModelGroupElement right =
        sec::model_multiply(g, sec::model_inverse(g));
    CHECK(left.k == 0);
    CHECK(right.k == 0);
    CHECK(left.v.square_summable());
    CHECK(right.v.square_summable());
    const double scale = 1.0 + iv::norm(g.v.square_part());
    CHECK(iv::norm(left.v.square_part()) <= 1e-12 * scale);
    CHECK(iv::norm(right.v.square_part()) <= 1e-12 * scale);
  }

  for (int trial = 0; trial < 25; ++trial) {
    const ModelGroupElement a = random_element(reg, 1);
    const ModelGroupElement b = random_element(reg, 1);
    const ModelGroupElement c = random_element(reg, 1);
    check_element_close(
        sec::model_multiply(sec::model_multiply(a, b), c),
        sec::model_multiply(a, sec::model_multiply(b, c)), 1e-11);
  }

  // conjugating a translation by the frame shift is the transpose action
  const ModelGroupElement shift{DualVector(reg), 1};
  for (int trial = 0; trial < 5; ++trial) {
    DualVector u = DualVector::from_square(reg, random_square(reg));
    u += DualVector::direction(reg, trial % 3, 1.0 + trial);
    const ModelGroupElement conj = sec::model_multiply(
        sec::model_multiply(shift, ModelGroupElement{u, 0}),
        sec::model_inverse(shift));
    CHECK(conj.k == 0);
    check_dual_close(conj.v, sec::transpose_action(-1, u), 1e-15);
  }

  // scaling powers accumulate and hit the configured bound
  const ModelGroupElement big{DualVector(reg), 7};
  CHECK_THROWS_AS(sec::model_multiply(big, big), std::out_of_range);
}

TEST_CASE("labels: stabilizer, separation and equivalence") {
  const auto& reg = basis();
  const SectorLabel x0 = sec::base_label(reg);

  // square-summable translations and certified images fix the base label
  CHECK(sec::label_equal(x0, x0));
  const ModelGroupElement stab{
      DualVector::from_square(reg, random_square(reg)), 0};
  CHECK(sec::label_equal(sec::sector_act(x0, stab), x0));
  const ModelGroupElement certified{
      DualVector::from_square(reg, reg.materialized(2, -1)), 0};
  CHECK(sec::label_equal(sec::sector_act(x0, certified), x0));
  const ModelGroupElement symbolic_image{
      DualVector::direction(reg, 0, 1.0, -1), 0};
  CHECK(sec::label_equal(sec::sector_act(x0, symbolic_image), x0));

  // dressed translates move it, pairwise differently
  std::vector<SectorLabel> x;
  for (int j = 0; j < reg.size(); ++j)
    x.push_back(sec::sector_act(
        x0, ModelGroupElement{DualVector::direction(reg, j, 1.0), 0}));
  for (int j = 0; j < reg.size(); ++j) {
    CHECK_FALSE(sec::label_equal(x[j], x0));
    for (int i = 0; i < j; ++i) CHECK_FALSE(sec::label_equal(x[i], x[j]));
  }

  // a pure frame shift also moves the label
  CHECK_FALSE(sec::label_equal(
      sec::sector_act(x0, ModelGroupElement{DualVector(reg), 1}), x0));

  // acting is a right action on labels
  const ModelGroupElement g = random_element(reg, 1);
  const ModelGroupElement h = random_element(reg, 1);
  CHECK(sec::label_equal(sec::sector_act(sec::sector_act(x0, g), h),
                         sec::sector_act(x0, sec::model_multiply(g, h))));

  // equivalence relation on a mixed sample with engineered coincidences
  std::vector<SectorLabel> sample;
  sample.push_back(x0);
  sample.push_back(sec::sector_act(x0, stab));
  sample.push_back(x[0]);
  sample.push_back(sec::sector_act(x[0], stab));
  sample.push_back(x[1]);
  sample.push_back(sec::sector_act(x0, g));
  const std::size_t n = sample.size();
  for (std::size_t i = 0; i < n; ++i) CHECK(sec::label_equal(sample[i], sample[i]));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      CHECK(sec::label_equal(sample[i], sample[j]) ==
            sec::label_equal(sample[j], sample[i]));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (sec::label_equal(sample[i], sample[j]) &&
            sec::label_equal(sample[j], sample[k]))
          CHECK(sec::label_equal(sample[i], sample[k]));
}

TEST_CASE("conjugate classes separate at the identity frame and merge after "
          "one shift") {
  const auto& reg = basis();
  const SectorLabel x0 = sec::base_label(reg);
  const ModelGroupElement id = sec::model_identity(reg);
  const ModelGroupElement shift{DualVector(reg), 1};

  std::vector<ModelGroupElement> t;
  std::vector<SectorLabel> x;
  for (int j = 0; j < reg.size(); ++j) {
    t.push_back(ModelGroupElement{DualVector::direction(reg, j, 1.0), 0});
    x.push_back(sec::sector_act(x0, t.back()));
  }

  // identity frame: descriptors keep the full dressing terms
  const ConjugateClassPair base_id =
      sec::conjugate_classes_model(x0, x0, id, id);
  CHECK(base_id.first.surviving.empty());
  CHECK(base_id.second.surviving.empty());
  std::vector<ConjugateClassPair> at_id;
  for (int j = 0; j < reg.size(); ++j) {
    at_id.push_back(sec::conjugate_classes_model(x[j], x0, id, t[j]));
    CHECK(at_id.back().first.rep_power == 0);
    CHECK(at_id.back().first.surviving ==
          DualVector::Terms{{{j, 0}, -1.0}});
    CHECK(at_id.back().second.surviving ==
          DualVector::Terms{{{j, 0}, 1.0}});
    CHECK_FALSE(at_id.back().first == base_id.first);
    CHECK_FALSE(at_id.back().second == base_id.second);
    for (int i = 0; i < j; ++i) {
      CHECK_FALSE(at_id.back().first == at_id[i].first);
      CHECK_FALSE(at_id.back().second == at_id[i].second);
    }
  }

  // shifted frame: every descriptor collapses onto the base point's
  const ConjugateClassPair base_sh =
      sec::conjugate_classes_model(x0, x0, shift, id);
  CHECK(base_sh.first.rep_power == 2);
  CHECK(base_sh.first.stab_power == 1);
  CHECK(base_sh.first.surviving.empty());
  CHECK(base_sh.second.surviving.empty());
  for (int j = 0; j < reg.size(); ++j) {
    const ConjugateClassPair c =
        sec::conjugate_classes_model(x[j], x0, shift, t[j]);
    CHECK(c.first == base_sh.first);
    CHECK(c.second == base_sh.second);
  }

  // witness independence: any stabilizer prefix gives the same descriptors
  const ModelGroupElement alt = sec::model_multiply(
      ModelGroupElement{DualVector::from_square(reg, random_square(reg)), 0},
      t[1]);
  const ConjugateClassPair via_alt =
      sec::conjugate_classes_model(x[1], x0, shift, alt);
  const ConjugateClassPair via_t =
      sec::conjugate_classes_model(x[1], x0, shift, t[1]);
  CHECK(via_alt.first == via_t.first);
  CHECK(via_alt.second == via_t.second);

  // a witness that does not reach x is rejected
  CHECK_THROWS_AS(sec::conjugate_classes_model(x[0], x0, shift, t[1]),
                  std::invalid_argument);
}

TEST_CASE("class construction iterates with period two") {
  const auto& reg = basis();
  const SectorLabel x0 = sec::base_label(reg);
  const ModelGroupElement g{DualVector::direction(reg, 0, 1.0) +
                                DualVector::from_square(reg, random_square(reg)),
                            0};

  // walk: x -> point of first class (witnessed by (a g^{-1} a) h) -> point of
  // that one's first class, and so on; descriptors must alternate with
  // period two.  The conjugated-stabilizer translate h is (T^q)^t of a
  // square-summable move.
  const auto iterate = [&](const ModelGroupElement& frame,
                           const ModelGroupElement& witness) {
    const ModelGroupElement h{
        sec::transpose_action(
            frame.k, DualVector::from_square(reg, random_square(reg))),
        0};
    return sec::model_multiply(
        sec::model_multiply(sec::model_multiply(frame, sec::model_inverse(witness)),
                            frame),
        h);
  };

  for (const int frame_power : {0, 1}) {
    const ModelGroupElement frame{DualVector(reg), frame_power};
    const SectorLabel x = sec::sector_act(x0, g);
    const ConjugateClassPair once =
        sec::conjugate_classes_model(x, x0, frame, g);

    const ModelGroupElement g_second = iterate(frame, g);
    const ConjugateClassPair twice = sec::conjugate_classes_model(
        sec::sector_act(x0, g_second), x0, frame, g_second);
    CHECK(twice.first == once.second);
    CHECK(twice.second == once.first);

    const ModelGroupElement g_third = iterate(frame, g_second);
    const ConjugateClassPair thrice = sec::conjugate_classes_model(
        sec::sector_act(x0, g_third), x0, frame, g_third);
    CHECK(thrice.first == once.first);
    CHECK(thrice.second == once.second);

    if (frame_power == 0) {  // identity frame keeps the terms visible
      CHECK(once.first.surviving == DualVector::Terms{{{0, 0}, -1.0}});
      CHECK(once.second.surviving == DualVector::Terms{{{0, 0}, 1.0}});
    }
  }
}

TEST_CASE("normalizer hypothesis check reports violations") {
  const auto& reg = basis();
  CHECK(sec::frame_normalizer_violation(reg, ModelGroupElement{DualVector(reg), 1})
            .empty());
  CHECK(sec::frame_normalizer_violation(reg, ModelGroupElement{DualVector(reg), 2})
            .empty());
  const std::string bad = sec::frame_normalizer_violation(
      reg, ModelGroupElement{DualVector(reg), -1});
  CHECK_FALSE(bad.empty());
  CHECK(bad.find("power 1") != std::string::npos);
}

TEST_CASE("theorem verification report") {
  const auto& reg = basis();
  const sec::SectorTheoremReport report = sec::verify_sector_theorems(reg);
  CHECK(report.all_passed);
  CHECK_FALSE(report.model_axiom.empty());
  CHECK(report.independence_min_gap > 0.0);
  REQUIRE(report.direction_image_norms.size() == 3);
  for (const double f : report.direction_image_norms) CHECK(f > 0.0);
  REQUIRE(report.checks.size() == 7);
  const std::vector<std::string> expected = {
      "frame-shift-normalizes-translations",
      "base-translate-labels-distinct",
      "identity-frame-classes-separate",
      "shifted-frame-classes-merge",
      "translate-orbit-inside-second-class",
      "certified-image-translates-fix-label",
      "shifted-translates-stay-distinct"};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(report.checks[i].claim == expected[i]);
    CHECK(report.checks[i].passed);
    CHECK_FALSE(report.checks[i].detail.empty());
  }

  // a single direction still verifies
  DressingDirectionRegistry solo(InfravacuumMap(ShellGrid(1.0, kShells)),
                                 {DressingSpec(Vec3{0.0, 0.0, 0.3}, 0.1, 1.0)},
                                 kLmax, kDepth);
  solo.certify(1e-3);
  CHECK(sec::verify_sector_theorems(solo).all_passed);
}
