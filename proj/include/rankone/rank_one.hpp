#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rankone/factor.hpp"
#include "rankone/smoothness.hpp"

namespace rankone {

// A d-variate evaluation oracle.
using DFun = std::function<double(const std::vector<double>&)>;

// Product of d univariate factors; the object being recovered.  Also serves
// as its own evaluation oracle.
class RankOneFunction {
 public:
  explicit RankOneFunction(std::vector<UnivariateFactor> factors);

  int dim() const { return int(factors_.size()); }
  const std::vector<UnivariateFactor>& factors() const { return factors_; }

  // Left-to-right product of factor evaluations.
  double operator()(const std::vector<double>& x) const;

  // Exact by separability: product of per-factor sup norms.
  double sup_norm() const;

  // A point attaining the sup norm (per-factor argmax).
  std::vector<double> sup_norm_argmax() const;

  // Univariate restriction through the anchor z along coordinate i:
  // g(x) = f(z_1,...,z_{i-1}, x, z_{i+1},...,z_d), returned as an exactly
  // represented factor (the off-coordinate product is a constant).
  UnivariateFactor fiber(int i, const std::vector<double>& z) const;

  DFun as_oracle() const;

 private:
  std::vector<UnivariateFactor> factors_;
};

RankOneFunction random_rank_one(const SmoothnessClass& cls, std::uint64_t seed);
RankOneFunction random_rank_one_with_min_norm(const SmoothnessClass& cls,
                                              std::uint64_t seed,
                                              double min_factor_norm);

// Lower-bound estimate of sup |f - a| over [0,1]^d: full grid with
// floor(budget^(1/d)) points per axis, then coordinate-wise golden-section
// refinement around the best grid point (50 iterations per coordinate,
// 3 sweeps).  An estimate, not a certificate.
double sup_error_estimate(const DFun& f, const DFun& a, int d, long budget);

}  // namespace rankone
