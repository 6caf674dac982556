#pragma once
// Symbolic group calculus for the velocity-charge coset model.  Elements are
// pairs (v, T^k) of a dual vector and an integer power of the scaling map;
// dual vectors carry an exact square-summable part plus formal dressing terms
// c * (T^m)^t v_j over the declared direction basis.  Terms always stay
// symbolic so that transpose powers cancel exactly; a term with power <= -1
// is *classified* as square-summable through the basis certificate (minting
// such a term demands a certified basis), and square_realization() produces
// the numeric stand-in on demand.  This keeps the group law exact while the
// stabilizer predicate stays decidable.

#include <algorithm>
#include <cmath>
#include <compare>
#include <map>
#include <stdexcept>
#include <utility>

#include "infravac/fieldspace/field_vector.hpp"
#include "infravac/sectors/dressing_basis.hpp"

namespace infravac::sectors {

struct DressingTermKey {
  int direction;
  int power;  // term means coeff * (T^power)^t v_direction

  friend auto operator<=>(const DressingTermKey&, const DressingTermKey&) =
      default;
};

class DualVector {
public:
  using Terms = std::map<DressingTermKey, double>;

  explicit DualVector(const DressingDirectionRegistry& basis)
      : basis_(&basis), square_(basis.grid()) {}

  static DualVector from_square(const DressingDirectionRegistry& basis,
                                FieldVector square) {
    DualVector v(basis);
    if (square.grid().n_shells != basis.grid().n_shells ||
        square.grid().kappa != basis.grid().kappa)
      throw std::invalid_argument("dual vector: square part grid mismatch");
    v.square_ = std::move(square);
    return v;
  }

  static DualVector direction(const DressingDirectionRegistry& basis, int j,
                              double coeff, int power = 0) {
    if (j < 0 || j >= basis.size())
      throw std::out_of_range("dual vector: direction index");
    DualVector v(basis);
    v.add_term(j, power, coeff);
    return v;
  }

  const DressingDirectionRegistry& basis() const { return *basis_; }
  const FieldVector& square_part() const { return square_; }
  const Terms& dressing_terms() const { return terms_; }

  // in the square-summable translation subgroup: every surviving term sits at
  // a power whose image carries a certified square-summable limit
  bool square_summable() const {
    for (const auto& [key, c] : terms_)
      if (key.power >= 0) return false;
    return true;
  }

  // numeric stand-in: exact square part plus the certified truncated images
  // of every power <= -1 term (terms at power >= 0 have none and throw)
  FieldVector square_realization() const {
    FieldVector out = square_;
    for (const auto& [key, c] : terms_) {
      if (key.power >= 0)
        throw std::logic_error(
            "dual vector: no square realization at power >= 0");
      out += c * basis_->materialized(key.direction, key.power);
    }
    return out;
  }

  double coefficient(int j, int power) const {
    const auto it = terms_.find({j, power});
    return it == terms_.end() ? 0.0 : it->second;
  }

  DualVector& operator+=(const DualVector& o) {
    require_same_basis(o);
    square_ += o.square_;
    for (const auto& [key, c] : o.terms_) add_term(key.direction, key.power, c);
    return *this;
  }
  DualVector& operator-=(const DualVector& o) {
    require_same_basis(o);
    square_ -= o.square_;
    for (const auto& [key, c] : o.terms_) add_term(key.direction, key.power, -c);
    return *this;
  }
  DualVector& operator*=(double s) {
    square_ *= s;
    if (s == 0.0) {
      terms_.clear();
      return *this;
    }
    for (auto& [key, c] : terms_) c *= s;
    return *this;
  }
  friend DualVector operator+(DualVector a, const DualVector& b) {
    return a += b;
  }
  friend DualVector operator-(DualVector a, const DualVector& b) {
    return a -= b;
  }
  friend DualVector operator*(double s, DualVector v) { return v *= s; }
  friend DualVector operator-(DualVector v) { return v *= -1.0; }

  // (T^k)^t: the square part transforms by the exact diagonal map T^{-k};
  // each formal term shifts its power by k and stays symbolic, so opposite
  // shifts cancel exactly.  Dropping a term to power <= -1 asserts that its
  // image is square-summable, which only a certified basis may claim.
  void apply_transpose_power(int k) {
    if (k == 0) return;
    if (std::abs(k) > basis_->power_bound())
      throw std::out_of_range("dual vector: transpose power outside bound");
    square_ = apply_scaling_power(square_, -k);
    Terms shifted;
    for (const auto& [key, c] : terms_) {
      const int power = key.power + k;
      check_power(power);
      shifted.emplace(DressingTermKey{key.direction, power}, c);
    }
    terms_ = std::move(shifted);
  }

private:
  void require_same_basis(const DualVector& o) const {
    if (basis_ != o.basis_)
      throw std::invalid_argument("dual vector: direction basis mismatch");
  }

  void check_power(int power) const {
    if (std::abs(power) > basis_->power_bound())
      throw std::out_of_range("dual vector: term power outside bound");
    if (power <= -1 && !basis_->certified())
      throw std::runtime_error(
          "dual vector: square-summable classification requires a certified "
          "basis");
  }

  void add_term(int j, int power, double c) {
    if (c == 0.0) return;
    check_power(power);
    const DressingTermKey key{j, power};
    const double sum = coefficient(j, power) + c;
    if (sum == 0.0)
      terms_.erase(key);
    else
      terms_[key] = sum;
  }

  FieldVector apply_scaling_power(FieldVector f, int power) const {
    for (int p = 0; p < power; ++p) f = basis_->map().apply_t(f);
    for (int p = 0; p < -power; ++p) f = basis_->map().apply_t_inverse(f);
    return f;
  }

  const DressingDirectionRegistry* basis_;
  FieldVector square_;
  Terms terms_;
};

inline DualVector transpose_action(int k, DualVector v) {
  v.apply_transpose_power(k);
  return v;
}

// Group element (v, T^k) with product
//   (v1, T^{k1}) (v2, T^{k2}) = (v1 + (T^{-k1})^t v2, T^{k1+k2}).
struct ModelGroupElement {
  DualVector v;
  int k = 0;
};

inline ModelGroupElement model_identity(const DressingDirectionRegistry& basis) {
  return {DualVector(basis), 0};
}

inline ModelGroupElement model_multiply(const ModelGroupElement& a,
                                        const ModelGroupElement& b) {
  ModelGroupElement out{a.v + transpose_action(-a.k, b.v), a.k + b.k};
  if (std::abs(out.k) > a.v.basis().power_bound())
    throw std::out_of_range("model group: scaling power outside bound");
  return out;
}

inline ModelGroupElement model_inverse(const ModelGroupElement& g) {
  return {-transpose_action(g.k, g.v), -g.k};
}

// Labels are right cosets of the stabilizer of the base point, which this
// model declares to be exactly {square-summable translations} x {T^0}.
struct SectorLabel {
  ModelGroupElement rep;
};

inline SectorLabel base_label(const DressingDirectionRegistry& basis) {
  return {model_identity(basis)};
}

inline SectorLabel sector_act(const SectorLabel& x, const ModelGroupElement& g) {
  return {model_multiply(x.rep, g)};
}

inline bool stabilizes_base(const ModelGroupElement& g) {
  return g.k == 0 && g.v.square_summable();
}

inline bool label_equal(const SectorLabel& x, const SectorLabel& y) {
  return stabilizes_base(model_multiply(x.rep, model_inverse(y.rep)));
}

// Canonical descriptor of the double coset  Stab . w . H  where H is the
// stabilizer conjugated by a frame with scaling power q:  H-translations are
// (T^q)^t of square-summable vectors, so a formal term of power m in the
// representative can be absorbed iff m <= -1 or m <= q - k(w) - 1.  The
// descriptor keeps the scaling powers and the minimal surviving terms.
struct ClassDescriptor {
  int rep_power = 0;
  int stab_power = 0;
  DualVector::Terms surviving;

  friend bool operator==(const ClassDescriptor& a, const ClassDescriptor& b) {
    return a.rep_power == b.rep_power && a.stab_power == b.stab_power &&
           a.surviving == b.surviving;
  }
  friend bool operator!=(const ClassDescriptor& a, const ClassDescriptor& b) {
    return !(a == b);
  }
};

inline ClassDescriptor canonical_descriptor(const ModelGroupElement& w, int q) {
  ClassDescriptor d;
  d.rep_power = w.k;
  d.stab_power = q;
  // removable: square-summable terms (power <= -1) and conjugated-stabilizer
  // translates (power <= q - k - 1), so survivors have power >= max(0, q - k)
  const int keep_from = std::max(0, q - w.k);
  for (const auto& [key, c] : w.v.dressing_terms())
    if (key.power >= keep_from) d.surviving.emplace(key, c);
  return d;
}

struct ConjugateClassPair {
  ClassDescriptor first;
  ClassDescriptor second;
};

// Classes of x relative to the base point in the frame shifted by a, given a
// witness g_x with x = x0 . g_x.  First class: orbit of x0 . (a g_x^{-1} a)
// under the conjugated stabilizer; second class: orbit of x itself.
inline ConjugateClassPair conjugate_classes_model(const SectorLabel& x,
                                                  const SectorLabel& x0,
                                                  const ModelGroupElement& a,
                                                  const ModelGroupElement& g_x) {
  if (!label_equal(sector_act(x0, g_x), x))
    throw std::invalid_argument(
        "conjugate classes: witness does not move base point to x");
  const ModelGroupElement first_rep = model_multiply(
      model_multiply(a, model_inverse(g_x)), a);
  return {canonical_descriptor(first_rep, a.k),
          canonical_descriptor(g_x, a.k)};
}

}  // namespace infravac::sectors
