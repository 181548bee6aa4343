#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rankone/pointset.hpp"
#include "rankone/rank_one.hpp"
#include "rankone/smoothness.hpp"

namespace rankone {

enum class Tractability { Curse, QuasiPolynomial, Polynomial };

inline const char* to_string(Tractability t) {
  switch (t) {
    case Tractability::Curse: return "Curse";
    case Tractability::QuasiPolynomial: return "QuasiPolynomial";
    case Tractability::Polynomial: return "Polynomial";
  }
  return "?";
}

Tractability classify_tractability(int r, double M);

// Family of in-class functions with pairwise disjoint supports.  Members
// are enumerated lazily (sizes reach 2^d); each member is a product of two
// one-sided cut factors g (support left of the cut) and h (right of it).
class FoolingFamily {
 public:
  Regime regime() const { return regime_; }
  int dim() const { return d_; }
  std::size_t size() const { return size_; }
  double guaranteed_norm() const { return norm_; }
  double cut() const { return cut_; }
  int subset_size() const { return k_; }  // Moderate only

  RankOneFunction member(std::size_t index) const;

  // The unique member (if any) that is non-zero at x: a point with every
  // coordinate off the cut selects one support pattern.
  std::optional<std::size_t> member_hit_by(const std::vector<double>& x) const;

  friend FoolingFamily fooling_family_large(int r, double M, int d);
  friend FoolingFamily fooling_family_moderate(int r, double M, int d,
                                               double eps);

 private:
  Regime regime_;
  int r_, d_, k_ = 0;
  double M_, cut_, amp_, norm_;
  std::size_t size_;
};

// M >= 2^r r!: the 2^d products of g(x) = 2^r (x-1/2)^r 1_[0,1/2] and
// h(x) = 2^r (x-1/2)^r 1_[1/2,1], indexed by binary counting with
// coordinate 1 most significant (g = 0, h = 1).  Each member has norm 1.
FoolingFamily fooling_family_large(int r, double M, int d);

// r! < M < 2^r r!: cut at x0 = (r!/M)^(1/r); factor g on a k-subset J and
// h elsewhere, k = k(eps,d); subsets in colexicographic order.  Each member
// has norm |h(1)|^(d-k) > eps.
FoolingFamily fooling_family_moderate(int r, double M, int d, double eps);

// Largest k in [0,d] with |h(1)|^k > eps for the moderate construction.
int moderate_subset_size(int r, double M, int d, double eps);

// M <= r!: a single in-class function with known positive norm vanishing on
// all given points.  For r >= 2 (needs |points| <= d) the factors are
// linear; for r = 1 (needs |points| <= floor(log2 d), d >= 2) two
// coordinates carry half-interval cut factors found by exhaustive search
// over coordinate pairs and the four half-interval patterns.
RankOneFunction fooling_function_small(int r, double M, int d,
                                       const PointSet& points);

// Smallest member index whose support contains none of the points; exists
// whenever |points| < family size (each point eliminates at most one
// member).
std::optional<std::size_t> evade(const PointSet& points,
                                 const FoolingFamily& family);

}  // namespace rankone
