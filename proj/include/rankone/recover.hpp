#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rankone/detectors.hpp"
#include "rankone/interpolation.hpp"
#include "rankone/pointset.hpp"
#include "rankone/smoothness.hpp"

namespace rankone {

struct RecoverConfig {
  PointSetMode mode = PointSetMode::Verified;
  double c1 = 1.0;
  std::optional<Regime> regime_override;
  std::optional<double> delta_override;
  bool dedup = false;
  double zero_threshold = 0.0;
};

struct CostReport {
  long detector_evals = 0;
  long interpolation_evals = 0;
  long total = 0;
  double predicted_bound = 0.0;
  Regime regime = Regime::Small;
  std::size_t detector_size = 0;
  long m = 0;
  bool hit = false;
};

// Theorem-style cost bound for the regime the class falls into (or the
// overridden one).  The Small-regime log factor is floored at 1 to keep the
// bound positive near eps = 1.
double cost_bound(const SmoothnessClass& cls, double eps, double c1 = 1.0,
                  std::optional<Regime> regime_override = {});

// The end-to-end algorithm: detector scan, then anchored reconstruction on
// a hit, the zero approximant on a miss.  The variant taking a prebuilt
// detector allows reuse across runs.
std::pair<Approximant, CostReport> approximate(const DFun& f,
                                               const PointSet& detector,
                                               const SmoothnessClass& cls,
                                               double eps,
                                               const RecoverConfig& cfg = {});
std::pair<Approximant, CostReport> approximate(const DFun& f,
                                               const SmoothnessClass& cls,
                                               double eps,
                                               const RecoverConfig& cfg = {});

struct CostRow {
  Regime regime;
  int d;
  double eps;
  std::size_t detector_size;
  long m;
  long total;
  double bound;
  double measured_error;
  bool within_bound;
};

// Empirical cost/bound table over random in-class functions.  In formula
// mode total <= bound is asserted per row (within_bound).
std::vector<CostRow> cost_actual_vs_bound(const SmoothnessClass& cls,
                                          double eps, int trials,
                                          std::uint64_t seed,
                                          const RecoverConfig& cfg = {},
                                          long error_budget = 4096);

}  // namespace rankone
