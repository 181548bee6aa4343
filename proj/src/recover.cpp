#include "rankone/recover.hpp"

#include <cmath>

#include "rankone/errors.hpp"
#include "rankone/rank_one.hpp"
#include "rankone/rng.hpp"

namespace rankone {

double cost_bound(const SmoothnessClass& cls, double eps, double c1,
                  std::optional<Regime> regime_override) {
  if (!(eps > 0.0) || eps >= 1.0) throw UsageError("cost_bound: eps in (0,1)");
  const Regime reg = regime_override.value_or(regime(cls));
  const double crm = 4.0 * std::pow(std::max(1.0, c1 * cls.M), 1.0 / cls.r);
  const double rho = rho_of(cls);
  const double inv_eps_r = std::pow(eps, -1.0 / cls.r);
  switch (reg) {
    case Regime::Large: {
      const double c1c = 256.0 * rho + crm;
      return std::pow(c1c, cls.d) * inv_eps_r;
    }
    case Regime::Moderate: {
      const double delta = choose_delta(cls.r, cls.M);
      const double cd = c_delta(cls.r, cls.M, delta);
      const double c2 = 2.0 * cls.r + crm;
      const double c3 =
          std::log(128.0 * rho) * (1.0 + 1.0 / std::log(1.0 / cd));
      return c2 * std::exp(c3 * (1.0 + std::log(1.0 / eps)) *
                           (1.0 + std::log(double(cls.d))));
    }
    case Regime::Small: {
      const double c4 = 85.0 * cls.r + crm;
      const double ln_term = std::max(1.0, std::log(inv_eps_r));
      return c4 * double(cls.d) * double(cls.d) * inv_eps_r * ln_term;
    }
  }
  throw UsageError("cost_bound: bad regime");
}

std::pair<Approximant, CostReport> approximate(const DFun& f,
                                               const PointSet& detector,
                                               const SmoothnessClass& cls,
                                               double eps,
                                               const RecoverConfig& cfg) {
  if (!(eps > 0.0) || eps >= 1.0) throw UsageError("approximate: eps in (0,1)");
  if (detector.d != cls.d) throw UsageError("approximate: detector dimension");

  CostReport report;
  report.regime = cfg.regime_override.value_or(regime(cls));
  report.detector_size = detector.size();
  report.m = choose_m(cls, eps, cfg.c1);
  report.predicted_bound = cost_bound(cls, eps, cfg.c1, cfg.regime_override);

  long detector_evals = 0;
  const auto hit =
      find_nonzero(detector, f, &detector_evals, cfg.zero_threshold);
  report.detector_evals = detector_evals;

  if (!hit) {
    report.total = report.detector_evals;
    return {Approximant{}, report};
  }

  report.hit = true;
  long interp_evals = 0;
  auto counting = [&](const std::vector<double>& x) {
    ++interp_evals;
    return f(x);
  };
  Approximant a = reconstruct(counting, hit->point, hit->value, cls,
                              report.m);
  report.interpolation_evals = interp_evals;
  report.total = report.detector_evals + report.interpolation_evals;
  return {std::move(a), report};
}

std::pair<Approximant, CostReport> approximate(const DFun& f,
                                               const SmoothnessClass& cls,
                                               double eps,
                                               const RecoverConfig& cfg) {
  PointSet P = build_detector(cls, eps, cfg.mode, cfg.regime_override);
  return approximate(f, P, cls, eps, cfg);
}

std::vector<CostRow> cost_actual_vs_bound(const SmoothnessClass& cls,
                                          double eps, int trials,
                                          std::uint64_t seed,
                                          const RecoverConfig& cfg,
                                          long error_budget) {
  if (trials < 1) throw UsageError("cost_actual_vs_bound: trials >= 1");
  const PointSet P = build_detector(cls, eps, cfg.mode, cfg.regime_override);
  std::vector<CostRow> rows;
  rows.reserve(std::size_t(trials));
  for (int t = 0; t < trials; ++t) {
    const RankOneFunction f =
        random_rank_one(cls, derive_seed(seed, std::uint64_t(t)));
    auto [a, rep] = approximate(f.as_oracle(), P, cls, eps, cfg);
    CostRow row;
    row.regime = rep.regime;
    row.d = cls.d;
    row.eps = eps;
    row.detector_size = rep.detector_size;
    row.m = rep.m;
    row.total = rep.total;
    row.bound = rep.predicted_bound;
    row.measured_error = sup_error_estimate(f.as_oracle(), a.as_oracle(),
                                            cls.d, error_budget);
    row.within_bound = cfg.mode != PointSetMode::Formula ||
                       double(row.total) <= row.bound;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace rankone
