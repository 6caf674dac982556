#pragma once
// Declared basis of dressing directions for the coset model: each direction
// is a velocity-profile family with certified image limits under the scaling
// map, and the basis as a whole is certified independent modulo the
// square-summable part (pairwise differences grow linearly with depth).

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "infravac/dressing/dressing.hpp"
#include "infravac/fieldspace/field_vector.hpp"
#include "infravac/infravacuum/infravacuum_map.hpp"

namespace infravac::sectors {

struct DirectionCertificate {
  bool converged = false;       // image family Cauchy + degree truncation ok
  double t_image_norm_sq = 0.0; // fingerprint: limit of ||T v_n||^2
  double raw_slope = 0.0;       // ln 2 * angular total: ||v_n||^2 growth rate
};

// Holds the shared scaling map, the direction specs, their angular tables and
// truncated approximants, and hands out cached materializations of the
// transpose powers (T^m)^t v_j = T^{-m} v_j for m <= -1, which are the only
// powers with square-summable images.
class DressingDirectionRegistry {
public:
  DressingDirectionRegistry(InfravacuumMap map, std::vector<DressingSpec> specs,
                            int lmax, int depth, int power_bound = 8)
      : map_(std::move(map)), specs_(std::move(specs)), lmax_(lmax),
        depth_(depth), power_bound_(power_bound) {
    if (specs_.empty())
      throw std::invalid_argument("dressing basis: at least one direction");
    if (depth_ < 2 || depth_ > map_.grid().n_shells)
      throw std::out_of_range("dressing basis: depth out of range");
    if (power_bound_ < 1)
      throw std::invalid_argument("dressing basis: power bound >= 1");
    for (std::size_t j = 0; j < specs_.size(); ++j) {
      if (specs_[j].kappa != map_.grid().kappa)
        throw std::invalid_argument("dressing basis: cutoff mismatch");
      if (!(specs_[j].speed() > 0.0))
        throw std::invalid_argument("dressing basis: zero velocity direction");
      for (std::size_t i = 0; i < j; ++i)
        if (norm(specs_[i].w - specs_[j].w) <= 1e-9)
          throw std::invalid_argument("dressing basis: duplicate velocity");
    }
    tables_.reserve(specs_.size());
    for (const auto& spec : specs_)
      tables_.push_back(angular_table(spec, lmax_));
  }

  int size() const { return static_cast<int>(specs_.size()); }
  int depth() const { return depth_; }
  int power_bound() const { return power_bound_; }
  const InfravacuumMap& map() const { return map_; }
  const ShellGrid& grid() const { return map_.grid(); }
  const DressingSpec& spec(int j) const { return specs_.at(check(j)); }
  const AngularTable& table(int j) const { return tables_.at(check(j)); }

  // Convergence of every direction's image family plus pairwise independence
  // modulo the square-summable part.  Must run before any materialization.
  void certify(double tolerance = 1e-3) {
    certificates_.clear();
    for (std::size_t j = 0; j < specs_.size(); ++j) {
      const auto rep =
          convergence_diagnostics(specs_[j], map_, depth_, tolerance, lmax_);
      DirectionCertificate cert;
      cert.converged = rep.cauchy_holds && rep.lmax_sufficient;
      cert.t_image_norm_sq = rep.limit_estimate;
      cert.raw_slope = rep.linear_slope;
      if (!cert.converged)
        throw std::runtime_error("dressing basis: direction " +
                                 std::to_string(j) + " failed to certify");
      certificates_.push_back(cert);
    }
    // pairwise angular gaps: the difference family must grow linearly, i.e.
    // the per-shell angular profiles differ by a fixed positive energy
    min_gap_ = 0.0;
    for (std::size_t j = 0; j < specs_.size(); ++j)
      for (std::size_t i = 0; i < j; ++i) {
        const double gap = coefficient_gap(tables_[i], tables_[j]);
        const FieldVector diff_lo =
            dressing_approximant(specs_[i], grid(), depth_ / 2, tables_[i]) -
            dressing_approximant(specs_[j], grid(), depth_ / 2, tables_[j]);
        const FieldVector diff_hi =
            dressing_approximant(specs_[i], grid(), depth_, tables_[i]) -
            dressing_approximant(specs_[j], grid(), depth_, tables_[j]);
        const double expect_lo = (depth_ / 2 - 1) * shell_log() * gap;
        const double expect_hi = (depth_ - 1) * shell_log() * gap;
        if (gap <= 1e-10 ||
            std::abs(norm_sq(diff_lo) - expect_lo) > 1e-9 * expect_hi ||
            std::abs(norm_sq(diff_hi) - expect_hi) > 1e-9 * expect_hi)
          throw std::runtime_error(
              "dressing basis: directions " + std::to_string(i) + " and " +
              std::to_string(j) + " are not independent modulo square parts");
        if (min_gap_ == 0.0 || gap < min_gap_) min_gap_ = gap;
      }
    certified_ = true;
  }

  bool certified() const { return certified_; }
  double independence_min_gap() const { return min_gap_; }

  const DirectionCertificate& certificate(int j) const {
    if (!certified_)
      throw std::runtime_error("dressing basis: not certified yet");
    return certificates_.at(static_cast<std::size_t>(check(j)));
  }

  // (T^m)^t v_j for m <= -1: the truncated image T^{|m|} v_{j, depth}, one
  // fixed representative per (j, m) so repeated uses cancel exactly.
  const FieldVector& materialized(int j, int m) const {
    if (!certified_)
      throw std::runtime_error(
          "dressing basis: materialization before certification");
    if (m > -1 || -m > power_bound_)
      throw std::out_of_range("dressing basis: power outside certified range");
    const auto key = std::make_pair(check(j), m);
    const auto found = cache_.find(key);
    if (found != cache_.end()) return found->second;
    FieldVector image = dressing_approximant(specs_[static_cast<std::size_t>(j)],
                                             grid(), depth_,
                                             tables_[static_cast<std::size_t>(j)]);
    for (int p = 0; p < -m; ++p) image = map_.apply_t(image);
    return cache_.emplace(key, std::move(image)).first->second;
  }

private:
  int check(int j) const {
    if (j < 0 || j >= size())
      throw std::out_of_range("dressing basis: direction index");
    return j;
  }

  static double coefficient_gap(const AngularTable& a, const AngularTable& b) {
    double gap = 0.0;
    for (const auto& [mode, c] : a.coefficients) {
      const auto other = b.coefficients.find(mode);
      const std::complex<double> d =
          other == b.coefficients.end() ? c : c - other->second;
      gap += std::norm(d);
    }
    for (const auto& [mode, c] : b.coefficients)
      if (a.coefficients.find(mode) == a.coefficients.end()) gap += std::norm(c);
    return gap;
  }

  InfravacuumMap map_;
  std::vector<DressingSpec> specs_;
  int lmax_;
  int depth_;
  int power_bound_;
  std::vector<AngularTable> tables_;
  std::vector<DirectionCertificate> certificates_;
  double min_gap_ = 0.0;
  bool certified_ = false;
  mutable std::map<std::pair<int, int>, FieldVector> cache_;
};

}  // namespace infravac::sectors
