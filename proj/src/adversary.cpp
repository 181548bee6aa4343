#include "rankone/adversary.hpp"

#include <algorithm>
#include <cmath>

#include "rankone/errors.hpp"

namespace rankone {

Tractability classify_tractability(int r, double M) {
  if (r < 1 || !(M > 0.0)) throw UsageError("classify_tractability: bad class");
  const double rf = factorial(r);
  if (M >= std::ldexp(rf, r)) return Tractability::Curse;
  if (M > rf) return Tractability::QuasiPolynomial;
  return Tractability::Polynomial;
}

namespace {

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double v = 1.0;
  for (int i = 0; i < k; ++i) v = v * double(n - i) / double(i + 1);
  return std::round(v);
}

// amp * (x - cut)^r restricted to [0, cut], zero to the right.
UnivariateFactor left_cut_factor(int r, double cut, double amp) {
  // coefficient of x^i is amp * C(r,i) (-cut)^(r-i)
  poly::Poly p(r + 1, 0.0);
  for (int i = 0; i <= r; ++i)
    p[i] = amp * binom(r, i) * std::pow(-cut, r - i);
  return UnivariateFactor({0.0, cut, 1.0}, {p, poly::Poly{0.0}}, r);
}

// amp * (x - cut)^r restricted to [cut, 1], zero to the left.
UnivariateFactor right_cut_factor(int r, double cut, double amp) {
  poly::Poly p(r + 1, 0.0);
  p[r] = amp;  // local t = x - cut
  return UnivariateFactor({0.0, cut, 1.0}, {poly::Poly{0.0}, p}, r);
}

// Colexicographic rank of an ascending k-subset.
std::size_t colex_rank(const std::vector<int>& subset) {
  double rank = 0.0;
  for (std::size_t i = 0; i < subset.size(); ++i)
    rank += binom(subset[i], int(i) + 1);
  return std::size_t(rank);
}

std::vector<int> colex_unrank(std::size_t rank, int k) {
  std::vector<int> subset(k);
  double rest = double(rank);
  for (int i = k; i >= 1; --i) {
    int a = i - 1;
    while (binom(a + 1, i) <= rest) ++a;
    subset[i - 1] = a;
    rest -= binom(a, i);
  }
  return subset;
}

}  // namespace

FoolingFamily fooling_family_large(int r, double M, int d) {
  if (!(M >= std::ldexp(factorial(r), r)))
    throw std::domain_error("fooling_family_large: requires M >= 2^r r!");
  if (d < 1 || d > 62) throw UsageError("fooling_family_large: d in [1,62]");
  FoolingFamily fam;
  fam.regime_ = Regime::Large;
  fam.r_ = r;
  fam.d_ = d;
  fam.M_ = M;
  fam.cut_ = 0.5;
  fam.amp_ = std::ldexp(1.0, r);
  fam.norm_ = 1.0;
  fam.size_ = std::size_t(1) << d;
  return fam;
}

int moderate_subset_size(int r, double M, int d, double eps) {
  const double x0 = std::pow(factorial(r) / M, 1.0 / r);
  const double h1 = M * std::pow(1.0 - x0, r) / factorial(r);
  const long kappa =
      long(std::ceil(std::log(1.0 / eps) / std::log(1.0 / h1))) - 1;
  return int(std::min<long>(std::max<long>(kappa, 0), d));
}

FoolingFamily fooling_family_moderate(int r, double M, int d, double eps) {
  const double rf = factorial(r);
  if (!(M > rf && M < std::ldexp(rf, r)))
    throw std::domain_error("fooling_family_moderate: requires r! < M < 2^r r!");
  if (!(eps > 0.0) || eps >= 1.0)
    throw UsageError("fooling_family_moderate: eps in (0,1)");
  FoolingFamily fam;
  fam.regime_ = Regime::Moderate;
  fam.r_ = r;
  fam.d_ = d;
  fam.M_ = M;
  fam.cut_ = std::pow(rf / M, 1.0 / r);
  fam.amp_ = M / rf;
  fam.k_ = moderate_subset_size(r, M, d, eps);
  const double h1 = M * std::pow(1.0 - fam.cut_, r) / rf;
  fam.norm_ = std::pow(h1, d - fam.k_);
  fam.size_ = std::size_t(binom(d, fam.k_));
  return fam;
}

RankOneFunction FoolingFamily::member(std::size_t index) const {
  if (index >= size_) throw UsageError("FoolingFamily: index out of range");
  std::vector<char> use_g(d_, 0);
  if (regime_ == Regime::Large) {
    // Binary counting, coordinate 1 most significant; g = 0, h = 1.
    for (int i = 0; i < d_; ++i)
      use_g[i] = ((index >> (d_ - 1 - i)) & 1) == 0;
  } else {
    for (int i : colex_unrank(index, k_)) use_g[i] = 1;
  }
  std::vector<UnivariateFactor> fs;
  fs.reserve(std::size_t(d_));
  for (int i = 0; i < d_; ++i)
    fs.push_back(use_g[i] ? left_cut_factor(r_, cut_, amp_)
                          : right_cut_factor(r_, cut_, amp_));
  return RankOneFunction(std::move(fs));
}

std::optional<std::size_t> FoolingFamily::member_hit_by(
    const std::vector<double>& x) const {
  if (int(x.size()) != d_) throw UsageError("FoolingFamily: point dimension");
  std::vector<int> g_coords;
  for (int i = 0; i < d_; ++i) {
    if (x[i] == cut_) return std::nullopt;  // every member vanishes here
    if (x[i] < cut_) g_coords.push_back(i);
  }
  if (regime_ == Regime::Large) {
    std::size_t idx = 0;
    for (int i = 0; i < d_; ++i) {
      const bool is_h = x[i] > cut_;
      if (is_h) idx |= std::size_t(1) << (d_ - 1 - i);
    }
    return idx;
  }
  if (int(g_coords.size()) != k_) return std::nullopt;
  return colex_rank(g_coords);
}

RankOneFunction fooling_function_small(int r, double M, int d,
                                       const PointSet& points) {
  if (!(M <= factorial(r)) || !(M > 0.0))
    throw std::domain_error("fooling_function_small: requires 0 < M <= r!");
  if (points.d != d && !points.points.empty())
    throw UsageError("fooling_function_small: point dimension");
  const std::size_t n = points.size();

  if (r >= 2) {
    if (n > std::size_t(d))
      throw std::domain_error("fooling_function_small: too many points to fool");
    std::vector<UnivariateFactor> fs;
    fs.reserve(std::size_t(d));
    for (int i = 0; i < d; ++i) {
      if (std::size_t(i) < n) {
        const double c = points.points[i][i];
        const double denom = std::max(c, 1.0 - c);
        // linear factor vanishing at c, norm exactly 1
        fs.push_back(UnivariateFactor(
            {0.0, 1.0}, {poly::Poly{-c / denom, 1.0 / denom}}, r));
      } else {
        fs.push_back(constant_factor(1.0, r));
      }
    }
    return RankOneFunction(std::move(fs));
  }

  // r = 1: find two coordinates and half-interval pattern such that the box
  // I_j x I_l (others full) avoids every point.  Existence is guaranteed
  // for n <= floor(log2 d); failure within the precondition is a hard error.
  if (d < 2)
    throw std::domain_error("fooling_function_small: r = 1 needs d >= 2");
  const std::size_t budget = std::size_t(std::floor(std::log2(double(d))));
  if (n > budget)
    throw std::domain_error("fooling_function_small: too many points to fool");

  // bit i of sig[c]: point i lies strictly left of 1/2 in coordinate c
  std::vector<std::uint32_t> low_sig(d, 0), high_sig(d, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (int c = 0; c < d; ++c) {
      if (points.points[i][c] < 0.5) low_sig[c] |= 1u << i;
      if (points.points[i][c] > 0.5) high_sig[c] |= 1u << i;
    }

  int found_j = -1, found_l = -1;
  bool j_low = true, l_low = true;
  for (int j = 0; j < d && found_j < 0; ++j)
    for (int l = 0; l < d && found_j < 0; ++l) {
      if (j == l) continue;
      for (int pat = 0; pat < 4; ++pat) {
        const auto& sj = (pat & 1) ? high_sig[j] : low_sig[j];
        const auto& sl = (pat & 2) ? high_sig[l] : low_sig[l];
        // a point blocks the box iff it matches both half-interval choices
        if ((sj & sl) == 0) {
          found_j = j;
          found_l = l;
          j_low = !(pat & 1);
          l_low = !(pat & 2);
          break;
        }
      }
    }
  if (found_j < 0)
    throw NumericError(
        "fooling_function_small: pair search failed within preconditions");

  auto half_factor = [&](bool low) {
    // M (x - 1/2) on the chosen half interval, zero on the other
    if (low) {
      poly::Poly p{-0.5 * M, M};  // local t = x on [0, 1/2]
      return UnivariateFactor({0.0, 0.5, 1.0}, {p, poly::Poly{0.0}}, 1);
    }
    poly::Poly p{0.0, M};  // local t = x - 1/2 on [1/2, 1]
    return UnivariateFactor({0.0, 0.5, 1.0}, {poly::Poly{0.0}, p}, 1);
  };

  std::vector<UnivariateFactor> fs;
  fs.reserve(std::size_t(d));
  for (int i = 0; i < d; ++i) {
    if (i == found_j)
      fs.push_back(half_factor(j_low));
    else if (i == found_l)
      fs.push_back(half_factor(l_low));
    else
      fs.push_back(constant_factor(1.0, 1));
  }
  return RankOneFunction(std::move(fs));
}

std::optional<std::size_t> evade(const PointSet& points,
                                 const FoolingFamily& family) {
  std::vector<std::size_t> hits;
  for (const auto& x : points.points)
    if (auto idx = family.member_hit_by(x)) hits.push_back(*idx);
  std::sort(hits.begin(), hits.end());
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
  std::size_t candidate = 0;
  for (std::size_t h : hits) {
    if (h > candidate) break;
    if (h == candidate) ++candidate;
  }
  if (candidate >= family.size()) return std::nullopt;
  return candidate;
}

}  // namespace rankone
