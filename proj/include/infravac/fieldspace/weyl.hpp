// Finite products of Weyl generators reduced to (phase, displacement) via the
// canonical commutation relation W(f) W(g) = exp(-i sigma(f,g)) W(f+g).
#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "infravac/fieldspace/field_vector.hpp"

namespace infravac {

struct WeylWord {
  std::complex<double> phase{1.0, 0.0};
  FieldVector displacement;

  explicit WeylWord(FieldVector f, std::complex<double> z = {1.0, 0.0})
      : phase(z), displacement(std::move(f)) {}
};

inline WeylWord weyl_identity(const ShellGrid& grid) {
  return WeylWord(FieldVector(grid));
}

inline WeylWord weyl_multiply(const WeylWord& a, const WeylWord& b) {
  const double s = symplectic_form(a.displacement, b.displacement);
  WeylWord out(a.displacement + b.displacement,
               a.phase * b.phase * std::polar(1.0, -s));
  return out;
}

inline WeylWord weyl_multiply(const std::vector<WeylWord>& words) {
  if (words.empty())
    throw std::invalid_argument("weyl_multiply: empty word list");
  WeylWord acc = words.front();
  for (std::size_t k = 1; k < words.size(); ++k) acc = weyl_multiply(acc, words[k]);
  return acc;
}

inline WeylWord weyl_inverse(const WeylWord& w) {
  return WeylWord(-w.displacement, 1.0 / w.phase);
}

// || W(f) W(g) - W(g) W(f) ||: both products are unit multiples of W(f+g).
inline double weyl_commutator_norm(const FieldVector& f, const FieldVector& g) {
  return 2.0 * std::abs(std::sin(symplectic_form(f, g)));
}

// Quasi-free reference functional on generators.
inline double vacuum_functional(const FieldVector& f) {
  return std::exp(-0.5 * norm_sq(f));
}
inline std::complex<double> vacuum_expectation(const WeylWord& w) {
  return w.phase * vacuum_functional(w.displacement);
}

// Image of a word under the outer transformation labelled by a dual vector v
// and a symplectic map, given the precomputed image of the displacement:
// phase picks up exp(-2i Im<v, image>), displacement is replaced by the image.
inline WeylWord transform_word(const WeylWord& w, const FieldVector& v,
                               const FieldVector& displacement_image) {
  const double pairing = symplectic_form(v, displacement_image);
  return WeylWord(displacement_image, w.phase * std::polar(1.0, -2.0 * pairing));
}

}  // namespace infravac
