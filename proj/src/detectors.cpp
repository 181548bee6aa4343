#include "rankone/detectors.hpp"

#include <algorithm>
#include <cmath>

#include "rankone/errors.hpp"
#include "rankone/rng.hpp"

namespace rankone {

double rho_of(const SmoothnessClass& cls) {
  return std::max(double(cls.r), std::pow(cls.M, 1.0 / cls.r));
}

double empty_interval_length(const UnivariateFactor& g,
                             const SmoothnessClass& cls) {
  return std::min(1.0 / cls.r, std::pow(g.sup_norm() / cls.M, 1.0 / cls.r));
}

bool zero_free_interval_exists(const UnivariateFactor& g, double L) {
  const ZeroSet zs = g.zeros();
  // Zero-free gaps are delimited by zeros (points or interval endpoints)
  // and the domain boundary.
  std::vector<double> cuts{0.0, 1.0};
  cuts.insert(cuts.end(), zs.points.begin(), zs.points.end());
  for (const auto& [a, b] : zs.intervals) {
    cuts.push_back(a);
    cuts.push_back(b);
  }
  std::sort(cuts.begin(), cuts.end());
  const double tol = 1e-9;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    if (hi - lo + tol < L) continue;
    // Skip gaps inside identically-zero intervals.
    bool inside_zero = false;
    for (const auto& [a, b] : zs.intervals)
      if (lo >= a - tol && hi <= b + tol) {
        inside_zero = true;
        break;
      }
    if (!inside_zero) return true;
  }
  return false;
}

double c_delta(int r, double M, double delta) {
  if (!(delta > 0.0) || delta > 0.5)
    throw UsageError("c_delta: delta must be in (0, 1/2]");
  return M * std::pow(1.0 + 2.0 * delta, r) / std::ldexp(factorial(r), r);
}

double choose_delta(int r, double M) {
  const double rf = factorial(r);
  if (M >= std::ldexp(rf, r))
    throw std::domain_error("choose_delta: requires M < 2^r r!");
  const double B = 2.0 * std::pow(rf / M, 1.0 / r);
  return std::min(0.5, (B - 1.0) / 4.0);
}

int pseudo_dimension(int r, double M, int d, double eps, double delta) {
  const double cd = c_delta(r, M, delta);
  if (cd >= 1.0) throw UsageError("pseudo_dimension: requires C_delta < 1");
  if (!(eps > 0.0) || eps >= 1.0)
    throw UsageError("pseudo_dimension: eps in (0,1)");
  const long k = long(std::ceil(std::log(eps) / std::log(cd))) - 1;
  return int(std::min<long>(std::max<long>(k, 0), d));
}

DetectorParams detector_params(const SmoothnessClass& cls, double eps,
                               std::optional<double> delta_override) {
  DetectorParams p;
  p.regime = regime(cls);
  p.rho = rho_of(cls);
  switch (p.regime) {
    case Regime::Large:
      p.target_dispersion = std::pow(p.rho, -cls.d) * std::pow(eps, 1.0 / cls.r);
      break;
    case Regime::Moderate:
      p.delta = delta_override.value_or(choose_delta(cls.r, cls.M));
      p.c_delta_value = c_delta(cls.r, cls.M, p.delta);
      p.d0 = pseudo_dimension(cls.r, cls.M, cls.d, eps, p.delta);
      p.target_dispersion =
          std::pow(p.rho, -p.d0) * std::pow(eps, 1.0 / cls.r);
      break;
    case Regime::Small:
      p.gamma = (1.0 - std::pow(2.0, -1.0 / cls.d)) * std::pow(eps, 1.0 / cls.r);
      p.target_dispersion = 0.5 * std::pow(eps, 1.0 / cls.r);
      break;
  }
  return p;
}

PointSet detector_large(const SmoothnessClass& cls, double eps,
                        PointSetMode mode) {
  const double target =
      std::pow(rho_of(cls), -cls.d) * std::pow(eps, 1.0 / cls.r);
  PointSet P = low_dispersion_set(target, cls.d, mode);
  P.provenance = "detector_large " + P.provenance;
  return P;
}

namespace {

// All d0-element subsets of {0,...,d-1} in lexicographic order.
std::vector<std::vector<int>> subsets_lex(int d, int d0) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (int(cur.size()) == d0) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i <= d - (d0 - int(cur.size())); ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace

PointSet detector_moderate(const SmoothnessClass& cls, double eps,
                           PointSetMode mode, bool force,
                           std::optional<double> delta_override, bool dedup) {
  const double rf = factorial(cls.r);
  if (!force && !(cls.M > rf && cls.M < std::ldexp(rf, cls.r)))
    throw std::domain_error(
        "detector_moderate: regime requires r! < M < 2^r r!");
  const DetectorParams params = [&] {
    DetectorParams p;
    p.rho = rho_of(cls);
    p.delta = delta_override.value_or(choose_delta(cls.r, cls.M));
    p.c_delta_value = c_delta(cls.r, cls.M, p.delta);
    p.d0 = pseudo_dimension(cls.r, cls.M, cls.d, eps, p.delta);
    return p;
  }();
  const int d = cls.d, d0 = params.d0;

  PointSet P;
  P.d = d;

  if (d0 == d) {
    const double target = std::pow(params.rho, -d0) * std::pow(eps, 1.0 / cls.r);
    PointSet P1 = low_dispersion_set(target, d0, mode);
    P1.provenance = "detector_moderate(d0=d) " + P1.provenance;
    return P1;
  }

  const long diag_count = long(cls.r - 1) * (d - d0) + 1;
  const PointSet P2 = diagonal_set(diag_count, 0.5, params.delta, d - d0);

  if (d0 == 0) {
    PointSet out = P2;
    out.provenance = "detector_moderate(d0=0) " + out.provenance;
    return out;
  }

  const double target = std::pow(params.rho, -d0) * std::pow(eps, 1.0 / cls.r);
  const PointSet P1 = low_dispersion_set(target, d0, mode);

  for (const auto& J : subsets_lex(d, d0)) {
    std::vector<char> in_J(d, 0);
    for (int j : J) in_J[j] = 1;
    for (const auto& y : P1.points) {
      for (const auto& z : P2.points) {
        std::vector<double> x(d);
        int yi = 0, zi = 0;
        for (int i = 0; i < d; ++i) x[i] = in_J[i] ? y[yi++] : z[zi++];
        P.points.push_back(std::move(x));
      }
    }
  }
  if (dedup) {
    std::sort(P.points.begin(), P.points.end());
    P.points.erase(std::unique(P.points.begin(), P.points.end()),
                   P.points.end());
  }
  P.provenance = "detector_moderate(d0=" + std::to_string(d0) + ") " +
                 P1.provenance;
  return P;
}

double ru16_size(int r, int d, double eps) {
  const double e = std::pow(eps, -1.0 / r);
  return std::ceil(16.0 * d * e * std::log(66.0 * e));
}

PointSet detector_small(const SmoothnessClass& cls, double eps,
                        PointSetMode mode, bool force) {
  if (!force && cls.M > factorial(cls.r))
    throw std::domain_error("detector_small: regime requires M <= r!");
  const double target = 0.5 * std::pow(eps, 1.0 / cls.r);

  PointSet P0;
  if (mode == PointSetMode::Formula) {
    // The existence bound gives the cardinality; the concrete points are
    // net points of that count (the claimed dispersion is not certified).
    const double n = ru16_size(cls.r, cls.d, eps);
    P0 = digital_net(long(n), cls.d);
    P0.provenance += " formula(existence-bound) target=" + std::to_string(target);
    P0.claimed_dispersion = target;
  } else {
    P0 = low_dispersion_set(target, cls.d, mode);
  }

  const double gamma =
      (1.0 - std::pow(2.0, -1.0 / cls.d)) * std::pow(eps, 1.0 / cls.r);
  const long copies = long(cls.r - 1) * cls.d;  // shifts j = 0..copies

  PointSet P;
  P.d = cls.d;
  P.points.reserve(P0.points.size() * std::size_t(copies + 1));
  for (long j = 0; j <= copies; ++j) {
    const double shift = copies == 0 ? 0.0 : gamma * double(j) / double(copies);
    for (const auto& x : P0.points) {
      std::vector<double> y(x.size());
      for (std::size_t i = 0; i < x.size(); ++i)
        y[i] = (1.0 - gamma) * x[i] + shift;
      P.points.push_back(std::move(y));
    }
  }
  P.provenance = "detector_small(gamma=" + std::to_string(gamma) + ") " +
                 P0.provenance;
  return P;
}

PointSet build_detector(const SmoothnessClass& cls, double eps,
                        PointSetMode mode,
                        std::optional<Regime> regime_override) {
  const Regime reg = regime_override.value_or(regime(cls));
  switch (reg) {
    case Regime::Large:
      return detector_large(cls, eps, mode);
    case Regime::Moderate:
      return detector_moderate(cls, eps, mode, /*force=*/true);
    case Regime::Small:
      return detector_small(cls, eps, mode, /*force=*/true);
  }
  throw UsageError("build_detector: bad regime");
}

double detector_size_formula(const SmoothnessClass& cls, double eps,
                             std::optional<Regime> regime_override) {
  const Regime reg = regime_override.value_or(regime(cls));
  const double rho = rho_of(cls);
  switch (reg) {
    case Regime::Large: {
      const double n = std::ldexp(1.0, 7 * cls.d + 1) * std::pow(rho, cls.d) *
                       std::pow(eps, -1.0 / cls.r);
      return std::ceil(n - n * 1e-12);
    }
    case Regime::Moderate: {
      const double delta = choose_delta(cls.r, cls.M);
      const int d0 = pseudo_dimension(cls.r, cls.M, cls.d, eps, delta);
      double binom = 1.0;
      for (int i = 0; i < d0; ++i)
        binom = binom * double(cls.d - i) / double(i + 1);
      const double p2 = double(cls.r - 1) * (cls.d - d0) + 1.0;
      const double p1 =
          d0 == 0 ? 1.0
                  : [&] {
                      const double n = std::ldexp(1.0, 7 * d0 + 1) *
                                       std::pow(rho, d0) *
                                       std::pow(eps, -1.0 / cls.r);
                      return std::ceil(n - n * 1e-12);
                    }();
      if (d0 == cls.d) return p1;
      return binom * p1 * p2;
    }
    case Regime::Small:
      return (double(cls.r - 1) * cls.d + 1.0) * ru16_size(cls.r, cls.d, eps);
  }
  throw UsageError("detector_size_formula: bad regime");
}

std::optional<NonzeroHit> find_nonzero(const PointSet& P, const DFun& f,
                                       long* evals, double threshold) {
  long n = 0;
  for (std::size_t i = 0; i < P.points.size(); ++i) {
    ++n;
    const double v = f(P.points[i]);
    if (std::abs(v) > threshold) {
      if (evals) *evals = n;
      return NonzeroHit{P.points[i], i, v};
    }
  }
  if (evals) *evals = n;
  return std::nullopt;
}

RankOneFunction random_above_norm(const SmoothnessClass& cls, double eps,
                                  std::uint64_t seed) {
  for (int attempt = 0; attempt < 10; ++attempt) {
    RankOneFunction f =
        random_rank_one(cls, derive_seed(seed, std::uint64_t(attempt)));
    if (f.sup_norm() > eps) return f;
  }
  // Fall back to constant-blended factors whose norm floor multiplies out
  // above eps.
  const double tau =
      std::min(0.995, 1.01 * std::pow(eps, 1.0 / cls.d));
  for (int attempt = 10; attempt < 40; ++attempt) {
    RankOneFunction f = random_rank_one_with_min_norm(
        cls, derive_seed(seed, std::uint64_t(attempt)), tau);
    if (f.sup_norm() > eps) return f;
  }
  throw NumericError("random_above_norm: could not reach target norm");
}

DetectorCheck is_detector_empirical(const PointSet& P,
                                    const SmoothnessClass& cls, double eps,
                                    int trials, std::uint64_t seed) {
  if (trials < 1) throw UsageError("is_detector_empirical: trials >= 1");
  DetectorCheck report;
  report.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const RankOneFunction f =
        random_above_norm(cls, eps, derive_seed(seed, std::uint64_t(t)));
    long evals = 0;
    const auto hit = find_nonzero(P, f.as_oracle(), &evals);
    report.total_evals += evals;
    if (!hit) {
      ++report.failures;
      report.failed_trials.push_back(std::uint64_t(t));
    }
  }
  return report;
}

}  // namespace rankone
