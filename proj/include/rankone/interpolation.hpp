#pragma once

#include <functional>
#include <vector>

#include "rankone/polynomial.hpp"
#include "rankone/smoothness.hpp"

namespace rankone {

using UFun = std::function<double(double)>;
using DFun = std::function<double(const std::vector<double>&)>;

// Piecewise polynomial on K uniform cells of [0,1], degree < r per cell.
// No continuity across cells is required; the error contract is per cell.
class PiecewisePolynomial {
 public:
  PiecewisePolynomial(int cells, std::vector<poly::Poly> cell_coeffs);

  double operator()(double x) const;
  int cells() const { return cells_; }
  const std::vector<poly::Poly>& cell_coeffs() const { return coeffs_; }

 private:
  int cells_;
  std::vector<poly::Poly> coeffs_;  // local t = x - k/K
};

// Chebyshev-distributed interpolation nodes inside cell k of K.
std::vector<double> interpolation_nodes(int cell, int cells, int r);

// Partition [0,1] into K = floor(m/r) uniform cells, place r Chebyshev
// nodes per cell, fit the degree-(r-1) interpolant per cell via Newton
// divided differences.  Uses exactly K*r <= m evaluations of g.  Error is
// bounded by ||g^(r)||_inf / r! * h^r with h the cell width.
PiecewisePolynomial interpolate_univariate(const UFun& g, int m, int r);

// m = floor(C_{r,M} d^{1+1/r} eps^{-1/r}) with C_{r,M} = 4 max(1, c1*M)^{1/r},
// floored at d*r (minimum feasible for per-coordinate interpolation).
long choose_m(const SmoothnessClass& cls, double eps, double c1);

// Rank-one surrogate: scale * product of per-coordinate interpolants.
class Approximant {
 public:
  Approximant() : scale_(0.0) {}  // the zero approximant
  Approximant(double scale, std::vector<PiecewisePolynomial> coords);

  double operator()(const std::vector<double>& x) const;
  double scale() const { return scale_; }
  bool is_zero() const { return coords_.empty(); }
  const std::vector<PiecewisePolynomial>& coords() const { return coords_; }

  DFun as_oracle() const;

 private:
  double scale_;
  std::vector<PiecewisePolynomial> coords_;
};

// Anchored reconstruction: interpolate the d fibers of f through z_star and
// normalize by f(z_star)^(1-d).  Makes exactly d * r * floor(floor(m/d)/r)
// oracle calls; f_at_z_star is the already-known anchor value.
Approximant reconstruct(const DFun& f, const std::vector<double>& z_star,
                        double f_at_z_star, const SmoothnessClass& cls, long m);

// Convenience overload: evaluates the anchor itself (one extra call).
Approximant reconstruct(const DFun& f, const std::vector<double>& z_star,
                        const SmoothnessClass& cls, long m);

}  // namespace rankone
