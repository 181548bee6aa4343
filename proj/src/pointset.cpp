#include "rankone/pointset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rankone/errors.hpp"
#include "rankone/sobol_directions.hpp"

namespace rankone {

namespace {

constexpr int kBits = 52;  // digits exactly representable in a double
constexpr long kMaxMaterialized = 1L << 26;

std::vector<std::array<std::uint64_t, kBits>> direction_table(int d) {
  std::vector<std::array<std::uint64_t, kBits>> v(d);
  for (int k = 0; k < kBits; ++k) v[0][k] = std::uint64_t(1) << (kBits - 1 - k);
  for (int dim = 1; dim < d; ++dim) {
    const auto& row = detail::kSobolRows[dim - 1];
    const int s = row.degree;
    std::uint64_t m[kBits];
    for (int k = 0; k < s; ++k) m[k] = row.m[k];
    for (int j = s; j < kBits; ++j) {
      std::uint64_t val = m[j - s] ^ (m[j - s] << s);
      for (int k = 1; k < s; ++k)
        if ((row.poly >> (s - k)) & 1) val ^= m[j - k] << k;
      m[j] = val;
    }
    for (int k = 0; k < kBits; ++k) v[dim][k] = m[k] << (kBits - 1 - k);
  }
  return v;
}

}  // namespace

PointSet digital_net(long n, int d) {
  if (n < 1) throw UsageError("digital_net: n must be >= 1");
  if (d < 1 || d > detail::kSobolMaxDim)
    throw UsageError("digital_net: d outside direction-number table (1..32)");
  if (n > kMaxMaterialized)
    throw ResourceError("digital_net: refusing to materialize > 2^26 points");

  const auto dirs = direction_table(d);
  const double scale = std::ldexp(1.0, -kBits);
  PointSet P;
  P.d = d;
  P.points.reserve(std::size_t(n));
  for (long k = 0; k < n; ++k) {
    std::vector<double> x(d, 0.0);
    std::uint64_t acc[detail::kSobolMaxDim] = {};
    std::uint64_t kk = std::uint64_t(k);
    for (int j = 0; kk; ++j, kk >>= 1)
      if (kk & 1)
        for (int i = 0; i < d; ++i) acc[i] ^= dirs[i][j];
    for (int i = 0; i < d; ++i) x[i] = double(acc[i]) * scale;
    P.points.push_back(std::move(x));
  }
  P.provenance = "digital_net(n=" + std::to_string(n) + ",d=" +
                 std::to_string(d) + ")";
  return P;
}

DispersionTracker::DispersionTracker(int d) : d_(d) {
  if (d < 1 || d > 6)
    throw ResourceError("dispersion: exact computation capped at d <= 6");
  Box cube;
  cube.lo.fill(0.0);
  cube.hi.fill(0.0);
  for (int j = 0; j < d_; ++j) {
    cube.lo[j] = 0.0;
    cube.hi[j] = 1.0;
  }
  boxes_.push_back(cube);
}

double DispersionTracker::volume(const Box& b) const {
  double v = 1.0;
  for (int j = 0; j < d_; ++j) v *= b.hi[j] - b.lo[j];
  return v;
}

void DispersionTracker::insert(const std::vector<double>& p) {
  if (int(p.size()) != d_) throw UsageError("dispersion: dimension mismatch");

  std::vector<Box> parents;
  std::vector<Box> boundary;  // boxes with p on their closure, kept in place
  std::vector<Box> kept;
  kept.reserve(boxes_.size());
  for (const Box& b : boxes_) {
    bool strict = true, closure = true;
    for (int j = 0; j < d_; ++j) {
      if (!(b.lo[j] < p[j] && p[j] < b.hi[j])) strict = false;
      if (!(b.lo[j] <= p[j] && p[j] <= b.hi[j])) {
        closure = false;
        break;
      }
    }
    if (strict) {
      parents.push_back(b);
    } else {
      kept.push_back(b);
      if (closure) boundary.push_back(b);
    }
  }

  auto contains = [&](const Box& outer, const Box& inner) {
    for (int j = 0; j < d_; ++j)
      if (outer.lo[j] > inner.lo[j] || outer.hi[j] < inner.hi[j]) return false;
    return true;
  };

  std::vector<Box> accepted;
  for (const Box& parent : parents) {
    for (int j = 0; j < d_; ++j) {
      for (int side = 0; side < 2; ++side) {
        Box c = parent;
        if (side == 0)
          c.hi[j] = p[j];
        else
          c.lo[j] = p[j];
        bool dominated = false;
        for (const Box& b : boundary)
          if (contains(b, c)) {
            dominated = true;
            break;
          }
        if (!dominated)
          for (const Box& b : accepted)
            if (contains(b, c)) {
              dominated = true;
              break;
            }
        if (dominated) continue;
        // Drop earlier candidates strictly inside the new one.
        accepted.erase(std::remove_if(accepted.begin(), accepted.end(),
                                      [&](const Box& b) {
                                        return contains(c, b);
                                      }),
                       accepted.end());
        accepted.push_back(c);
      }
    }
  }

  kept.insert(kept.end(), accepted.begin(), accepted.end());
  boxes_.swap(kept);
}

double DispersionTracker::largest_volume() const {
  double best = 0.0;
  for (const Box& b : boxes_) best = std::max(best, volume(b));
  return best;
}

double dispersion_exact(const PointSet& P) {
  if (P.d < 1) throw UsageError("dispersion: d must be >= 1");
  if (P.d > 6)
    throw ResourceError("dispersion: exact computation capped at d <= 6");
  DispersionTracker tracker(P.d);
  for (const auto& p : P.points) tracker.insert(p);
  return tracker.largest_volume();
}

double low_dispersion_formula_size(double target, int d) {
  const double n = std::ldexp(1.0, 7 * d + 1) / target;
  // absorb roundoff from upstream pow() in the target before the ceiling
  return std::ceil(n - n * 1e-12);
}

PointSet low_dispersion_set(double target, int d, PointSetMode mode) {
  if (!(target > 0.0) || target >= 1.0)
    throw UsageError("low_dispersion_set: target must be in (0,1)");
  if (d < 1) throw UsageError("low_dispersion_set: d must be >= 1");

  if (mode == PointSetMode::Formula) {
    const double n = low_dispersion_formula_size(target, d);
    if (n > double(kMaxMaterialized))
      throw ResourceError("low_dispersion_set: formula-mode cardinality " +
                          std::to_string(n) + " too large to materialize");
    PointSet P = digital_net(long(n), d);
    P.provenance += " formula target=" + std::to_string(target);
    P.claimed_dispersion = target;
    return P;
  }

  if (d > 4)
    throw ResourceError("low_dispersion_set: verified mode capped at d <= 4");

  DispersionTracker tracker(d);
  long n = 2L * d;
  PointSet net = digital_net(n, d);
  for (const auto& p : net.points) tracker.insert(p);
  while (tracker.largest_volume() > target) {
    const long next = 2 * n;
    if (next > kMaxMaterialized)
      throw ResourceError("low_dispersion_set: verified growth exceeded cap");
    PointSet more = digital_net(next, d);
    for (long k = n; k < next; ++k) tracker.insert(more.points[k]);
    net = std::move(more);
    n = next;
  }
  net.provenance += " verified target=" + std::to_string(target);
  net.claimed_dispersion = target;
  return net;
}

PointSet diagonal_set(long count, double center, double halfwidth, int d) {
  if (count < 1) throw UsageError("diagonal_set: count must be >= 1");
  if (d < 1) throw UsageError("diagonal_set: d must be >= 1");
  if (halfwidth < 0.0 || center - halfwidth < 0.0 || center + halfwidth > 1.0)
    throw UsageError("diagonal_set: interval outside [0,1]");

  PointSet P;
  P.d = d;
  P.points.reserve(std::size_t(count));
  for (long j = 0; j < count; ++j) {
    const double t =
        count == 1 ? center
                   : center - halfwidth +
                         2.0 * halfwidth * double(j) / double(count - 1);
    P.points.emplace_back(std::size_t(d), t);
  }
  P.provenance = "diagonal_set(count=" + std::to_string(count) + ")";
  return P;
}

BaselineSize halton_baseline_size(const SmoothnessClass& cls, double eps) {
  if (!(eps > 0.0) || eps >= 1.0)
    throw UsageError("halton_baseline_size: eps must be in (0,1)");
  const int d = cls.d;

  std::vector<int> primes;
  for (int c = 2; int(primes.size()) < d; ++c) {
    bool ok = true;
    for (int p : primes)
      if (c % p == 0) {
        ok = false;
        break;
      }
    if (ok) primes.push_back(c);
  }
  double log_pi = 0.0;
  for (int p : primes) log_pi += std::log(double(p));

  const double log_val = (d * std::log(2.0) + d * std::log(cls.M) -
                          std::log(eps)) / cls.r +
                         d * std::log(2.0) + log_pi;
  if (log_val >= 62.9 * std::log(2.0))
    return {std::numeric_limits<std::uint64_t>::max(), true};
  const double v = std::exp(log_val);
  return {std::uint64_t(std::ceil(v * (1.0 - 1e-12))), false};
}

}  // namespace rankone
