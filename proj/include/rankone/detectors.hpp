#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rankone/factor.hpp"
#include "rankone/pointset.hpp"
#include "rankone/rank_one.hpp"
#include "rankone/smoothness.hpp"

namespace rankone {

// Regime parameters of the three detector constructions.
struct DetectorParams {
  Regime regime;
  double rho;                // max(r, M^(1/r))
  double delta = 0.0;        // Moderate only
  double c_delta_value = 0.0;
  int d0 = 0;                // pseudo-dimension (Moderate only)
  double gamma = 0.0;        // Small only
  double target_dispersion = 0.0;
};

double rho_of(const SmoothnessClass& cls);

// Length of a zero-free interval guaranteed for g:
// L(g) = min(1/r, (||g||_inf / M)^(1/r)).
double empty_interval_length(const UnivariateFactor& g,
                             const SmoothnessClass& cls);

// Locates a zero-free interval of length L from the exact zero structure.
bool zero_free_interval_exists(const UnivariateFactor& g, double L);

// C_delta = M (1+2 delta)^r / (2^r r!).
double c_delta(int r, double M, double delta);

// delta = min(1/2, (B-1)/4) with B = 2 (r!/M)^(1/r); guarantees
// C_delta < 1.  Requires M < 2^r r!.
double choose_delta(int r, double M);

// Largest d0 in [0,d] with C_delta^d0 > eps.
int pseudo_dimension(int r, double M, int d, double eps, double delta);

DetectorParams detector_params(const SmoothnessClass& cls, double eps,
                               std::optional<double> delta_override = {});

// Regime-specific detector constructions.  Each construction is valid for
// any class parameters it accepts; `force` bypasses the regime check on the
// Moderate/Small builders.
PointSet detector_large(const SmoothnessClass& cls, double eps,
                        PointSetMode mode);
PointSet detector_moderate(const SmoothnessClass& cls, double eps,
                           PointSetMode mode, bool force = false,
                           std::optional<double> delta_override = {},
                           bool dedup = false);
PointSet detector_small(const SmoothnessClass& cls, double eps,
                        PointSetMode mode, bool force = false);

// Regime dispatch (optionally overridden).
PointSet build_detector(const SmoothnessClass& cls, double eps,
                        PointSetMode mode,
                        std::optional<Regime> regime_override = {});

// Cardinality the formula-mode detector would have, without construction.
double detector_size_formula(const SmoothnessClass& cls, double eps,
                             std::optional<Regime> regime_override = {});

// Cardinality of the small-regime base set per the existence bound:
// ceil(2^4 d eps^(-1/r) ln(66 eps^(-1/r))).
double ru16_size(int r, int d, double eps);

// Scan P in index order; return the first point with f(x) != 0 (exact test
// on the evaluated value unless threshold > 0), plus its index.  evals
// receives the number of oracle calls made.
struct NonzeroHit {
  std::vector<double> point;
  std::size_t index;
  double value;
};
std::optional<NonzeroHit> find_nonzero(const PointSet& P, const DFun& f,
                                       long* evals = nullptr,
                                       double threshold = 0.0);

// Empirical falsification harness for the detector property: random
// in-class functions with sup norm > eps must all be detected.
struct DetectorCheck {
  int trials = 0;
  int failures = 0;
  std::vector<std::uint64_t> failed_trials;
  long total_evals = 0;
};
DetectorCheck is_detector_empirical(const PointSet& P,
                                    const SmoothnessClass& cls, double eps,
                                    int trials, std::uint64_t seed);

// Random in-class function with sup norm certifiably > eps: plain draws
// with rejection, falling back to constant-blended factors.
RankOneFunction random_above_norm(const SmoothnessClass& cls, double eps,
                                  std::uint64_t seed);

}  // namespace rankone
