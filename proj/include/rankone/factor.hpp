#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "rankone/polynomial.hpp"
#include "rankone/smoothness.hpp"

namespace rankone {

// Zeros of a piecewise polynomial on a subinterval: isolated points plus
// whole subintervals on which the function vanishes identically.
struct ZeroSet {
  std::vector<double> points;
  std::vector<std::pair<double, double>> intervals;

  bool has_interval() const { return !intervals.empty(); }
  // Number of distinct zeros, where an identically-zero interval counts as
  // infinitely many (reported as a large sentinel).
  std::size_t count() const;
};

// Exactly representable univariate factor: a piecewise polynomial on [0,1]
// with C^{r-1} joins.  Sup norm and r-th derivative sup are computed from
// the representation (critical-point isolation), not sampled.
class UnivariateFactor {
 public:
  // pieces[i] lives on [breakpoints[i], breakpoints[i+1]] in the local
  // variable t = x - breakpoints[i].
  UnivariateFactor(std::vector<double> breakpoints,
                   std::vector<poly::Poly> pieces, int r);

  double operator()(double x) const;

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<poly::Poly>& pieces() const { return pieces_; }
  int smoothness_order() const { return r_; }

  double sup_norm() const { return sup_norm_; }
  double sup_norm_argmax() const { return sup_argmax_; }
  double deriv_r_sup() const { return deriv_r_sup_; }

  // Value of the k-th derivative at x (one-sided at breakpoints, from the
  // piece to the right except at x = 1).
  double derivative(double x, int k) const;

  ZeroSet zeros(double a = 0.0, double b = 1.0) const;

  UnivariateFactor scaled(double c) const;
  // (1 - t) * sign + t * (*this); keeps class membership for t in [0,1].
  UnivariateFactor blended_with_constant(double t, double sign) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<poly::Poly> pieces_;
  int r_;
  double sup_norm_ = 0.0;
  double sup_argmax_ = 0.0;
  double deriv_r_sup_ = 0.0;
};

UnivariateFactor constant_factor(double value, int r);

// Membership check against the class invariants, up to tol:
// range within [-1,1], r-th derivative within M, C^{r-1} joins.
bool in_class(const UnivariateFactor& f, const SmoothnessClass& cls,
              double tol = 1e-9);

// Random in-class factor: piecewise-constant r-th derivative with values in
// [-M, M], integrated r times with random initial derivative values in
// [-1,1], then divided by max(1, sup norm).  Membership holds for every
// draw; cached bounds are exact.
UnivariateFactor random_factor(const SmoothnessClass& cls, std::mt19937_64& rng);

// Random in-class factor with sup norm guaranteed >= min_norm, obtained by
// blending a random factor with a constant of random sign.
UnivariateFactor random_factor_with_min_norm(const SmoothnessClass& cls,
                                             std::mt19937_64& rng,
                                             double min_norm);

}  // namespace rankone
