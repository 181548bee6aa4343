#include "rankone/rank_one.hpp"

#include <algorithm>
#include <cmath>

#include "rankone/errors.hpp"
#include "rankone/rng.hpp"

namespace rankone {

RankOneFunction::RankOneFunction(std::vector<UnivariateFactor> factors)
    : factors_(std::move(factors)) {
  if (factors_.empty()) throw UsageError("RankOneFunction: needs >= 1 factor");
}

double RankOneFunction::operator()(const std::vector<double>& x) const {
  if (x.size() != factors_.size())
    throw UsageError("RankOneFunction: dimension mismatch");
  double v = 1.0;
  for (std::size_t i = 0; i < factors_.size(); ++i) v *= factors_[i](x[i]);
  return v;
}

double RankOneFunction::sup_norm() const {
  double v = 1.0;
  for (const auto& f : factors_) v *= f.sup_norm();
  return v;
}

std::vector<double> RankOneFunction::sup_norm_argmax() const {
  std::vector<double> x(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i)
    x[i] = factors_[i].sup_norm_argmax();
  return x;
}

UnivariateFactor RankOneFunction::fiber(int i,
                                        const std::vector<double>& z) const {
  if (i < 0 || i >= dim()) throw UsageError("fiber: index out of range");
  if (z.size() != factors_.size()) throw UsageError("fiber: anchor dimension");
  double c = 1.0;
  for (int j = 0; j < dim(); ++j)
    if (j != i) c *= factors_[j](z[j]);
  return factors_[i].scaled(c);
}

DFun RankOneFunction::as_oracle() const {
  return [f = *this](const std::vector<double>& x) { return f(x); };
}

RankOneFunction random_rank_one(const SmoothnessClass& cls,
                                std::uint64_t seed) {
  std::vector<UnivariateFactor> fs;
  fs.reserve(cls.d);
  for (int i = 0; i < cls.d; ++i) {
    auto rng = make_stream(seed, std::uint64_t(i));
    fs.push_back(random_factor(cls, rng));
  }
  return RankOneFunction(std::move(fs));
}

RankOneFunction random_rank_one_with_min_norm(const SmoothnessClass& cls,
                                              std::uint64_t seed,
                                              double min_factor_norm) {
  std::vector<UnivariateFactor> fs;
  fs.reserve(cls.d);
  for (int i = 0; i < cls.d; ++i) {
    auto rng = make_stream(seed, std::uint64_t(i));
    fs.push_back(random_factor_with_min_norm(cls, rng, min_factor_norm));
  }
  return RankOneFunction(std::move(fs));
}

namespace {

constexpr double kInvPhi = 0.6180339887498949;

double golden_max(const std::function<double(double)>& h, double lo, double hi,
                  int iters) {
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = h(x1), f2 = h(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = h(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = h(x1);
    }
  }
  return f1 > f2 ? x1 : x2;
}

}  // namespace

double sup_error_estimate(const DFun& f, const DFun& a, int d, long budget) {
  if (budget < (1L << std::min(d, 60)))
    throw UsageError("sup_error_estimate: budget must be >= 2^d");
  const int g = std::max(2, int(std::floor(std::pow(double(budget), 1.0 / d))));

  auto gap = [&](const std::vector<double>& x) {
    return std::abs(f(x) - a(x));
  };

  std::vector<double> x(d, 0.0), best_x(d, 0.0);
  double best = -1.0;
  std::vector<int> idx(d, 0);
  for (;;) {
    for (int i = 0; i < d; ++i) x[i] = double(idx[i]) / double(g - 1);
    const double v = gap(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
    int i = 0;
    while (i < d && ++idx[i] == g) idx[i++] = 0;
    if (i == d) break;
  }

  const double cell = 1.0 / double(g - 1);
  x = best_x;
  for (int sweep = 0; sweep < 3; ++sweep) {
    for (int i = 0; i < d; ++i) {
      const double lo = std::max(0.0, x[i] - cell);
      const double hi = std::min(1.0, x[i] + cell);
      auto h = [&](double t) {
        x[i] = t;
        return gap(x);
      };
      const double t = golden_max(h, lo, hi, 50);
      x[i] = t;
      const double v = gap(x);
      if (v > best) best = v;
    }
  }
  return best;
}

}  // namespace rankone
