#include "rankone/factor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rankone/errors.hpp"

namespace rankone {

namespace {
constexpr std::size_t kInfiniteZeros = std::size_t(1) << 40;
}

std::size_t ZeroSet::count() const {
  if (has_interval()) return kInfiniteZeros;
  return points.size();
}

UnivariateFactor::UnivariateFactor(std::vector<double> breakpoints,
                                   std::vector<poly::Poly> pieces, int r)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)), r_(r) {
  if (breakpoints_.size() < 2 || pieces_.size() + 1 != breakpoints_.size())
    throw UsageError("UnivariateFactor: breakpoints/pieces mismatch");
  if (breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0)
    throw UsageError("UnivariateFactor: domain must be [0,1]");
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i)
    if (!(breakpoints_[i] < breakpoints_[i + 1]))
      throw UsageError("UnivariateFactor: breakpoints must increase");
  if (r_ < 1) throw UsageError("UnivariateFactor: r must be >= 1");

  sup_norm_ = 0.0;
  deriv_r_sup_ = 0.0;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const double w = breakpoints_[i + 1] - breakpoints_[i];
    const auto s = poly::sup_abs(pieces_[i], 0.0, w);
    if (s.value > sup_norm_) {
      sup_norm_ = s.value;
      sup_argmax_ = breakpoints_[i] + s.argmax;
    }
    const auto dr = poly::derivative_n(pieces_[i], r_);
    deriv_r_sup_ = std::max(deriv_r_sup_, poly::sup_abs(dr, 0.0, w).value);
  }
}

double UnivariateFactor::operator()(double x) const {
  std::size_t i =
      std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x) -
      breakpoints_.begin();
  if (i == 0) i = 1;
  if (i >= breakpoints_.size()) i = breakpoints_.size() - 1;
  return poly::eval(pieces_[i - 1], x - breakpoints_[i - 1]);
}

double UnivariateFactor::derivative(double x, int k) const {
  std::size_t i =
      std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x) -
      breakpoints_.begin();
  if (i == 0) i = 1;
  if (i >= breakpoints_.size()) i = breakpoints_.size() - 1;
  return poly::eval(poly::derivative_n(pieces_[i - 1], k),
                    x - breakpoints_[i - 1]);
}

ZeroSet UnivariateFactor::zeros(double a, double b) const {
  ZeroSet zs;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const double lo = std::max(a, breakpoints_[i]);
    const double hi = std::min(b, breakpoints_[i + 1]);
    if (lo >= hi) continue;
    const double tl = lo - breakpoints_[i], th = hi - breakpoints_[i];
    if (poly::is_zero(pieces_[i])) {
      zs.intervals.emplace_back(lo, hi);
      continue;
    }
    for (double t : poly::real_roots(pieces_[i], tl, th))
      zs.points.push_back(breakpoints_[i] + t);
  }
  std::sort(zs.points.begin(), zs.points.end());
  zs.points.erase(
      std::unique(zs.points.begin(), zs.points.end(),
                  [](double x, double y) { return std::abs(x - y) < 1e-10; }),
      zs.points.end());
  return zs;
}

UnivariateFactor UnivariateFactor::scaled(double c) const {
  std::vector<poly::Poly> ps;
  ps.reserve(pieces_.size());
  for (const auto& p : pieces_) ps.push_back(poly::scaled(p, c));
  return UnivariateFactor(breakpoints_, std::move(ps), r_);
}

UnivariateFactor UnivariateFactor::blended_with_constant(double t,
                                                         double sign) const {
  std::vector<poly::Poly> ps;
  ps.reserve(pieces_.size());
  for (const auto& p : pieces_) {
    auto q = poly::scaled(p, t);
    if (q.empty()) q.push_back(0.0);
    q[0] += (1.0 - t) * sign;
    ps.push_back(std::move(q));
  }
  return UnivariateFactor(breakpoints_, std::move(ps), r_);
}

UnivariateFactor constant_factor(double value, int r) {
  return UnivariateFactor({0.0, 1.0}, {poly::Poly{value}}, r);
}

bool in_class(const UnivariateFactor& f, const SmoothnessClass& cls,
              double tol) {
  if (f.sup_norm() > 1.0 + tol) return false;
  if (f.deriv_r_sup() > cls.M + tol) return false;
  const auto& bp = f.breakpoints();
  const auto& ps = f.pieces();
  for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
    const double w = bp[i + 1] - bp[i];
    for (int k = 0; k < cls.r; ++k) {
      const double left = poly::eval(poly::derivative_n(ps[i], k), w);
      const double right = poly::eval(poly::derivative_n(ps[i + 1], k), 0.0);
      if (std::abs(left - right) > tol * std::max(1.0, cls.M)) return false;
    }
  }
  return true;
}

UnivariateFactor random_factor(const SmoothnessClass& cls,
                               std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kdist(1, 8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> init(-1.0, 1.0);
  std::uniform_real_distribution<double> dval(-cls.M, cls.M);

  const int k = kdist(rng);
  std::vector<double> bp;
  bp.push_back(0.0);
  for (int i = 0; i < k; ++i) bp.push_back(unit(rng));
  bp.push_back(1.0);
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end(),
                       [](double x, double y) { return y - x < 1e-3; }),
           bp.end());
  if (bp.back() != 1.0) bp.back() = 1.0;

  const std::size_t n = bp.size() - 1;
  std::vector<poly::Poly> pieces(n);
  for (std::size_t i = 0; i < n; ++i) pieces[i] = poly::Poly{dval(rng)};

  // Integrate r times; continuity of all lower derivatives follows from
  // matching the integration constant at each breakpoint.
  for (int level = 0; level < cls.r; ++level) {
    double carry = init(rng);
    for (std::size_t i = 0; i < n; ++i) {
      pieces[i] = poly::antiderivative(pieces[i], carry);
      carry = poly::eval(pieces[i], bp[i + 1] - bp[i]);
    }
  }

  UnivariateFactor f(bp, std::move(pieces), cls.r);
  const double c = std::max(1.0, f.sup_norm());
  return c == 1.0 ? f : f.scaled(1.0 / c);
}

UnivariateFactor random_factor_with_min_norm(const SmoothnessClass& cls,
                                             std::mt19937_64& rng,
                                             double min_norm) {
  if (!(min_norm > 0.0) || min_norm >= 1.0)
    throw UsageError("random_factor_with_min_norm: min_norm must be in (0,1)");
  UnivariateFactor g = random_factor(cls, rng);
  const double t = (1.0 - min_norm) / 2.0;
  const double sign = (rng() & 1) ? 1.0 : -1.0;
  return g.blended_with_constant(t, sign);
}

}  // namespace rankone
