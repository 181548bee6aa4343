#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "rankone/errors.hpp"
#include "rankone/factor.hpp"
#include "rankone/rank_one.hpp"
#include "rankone/rng.hpp"
#include "rankone/smoothness.hpp"

using namespace rankone;

namespace {

UnivariateFactor identity_factor(int r) {
  return UnivariateFactor({0.0, 1.0}, {poly::Poly{0.0, 1.0}}, r);
}

UnivariateFactor one_minus_x(int r) {
  return UnivariateFactor({0.0, 1.0}, {poly::Poly{1.0, -1.0}}, r);
}

// 2(x - 1/2) on [0, 1/2], zero on [1/2, 1].
UnivariateFactor left_hat() {
  return UnivariateFactor({0.0, 0.5, 1.0},
                          {poly::Poly{-1.0, 2.0}, poly::Poly{0.0}}, 1);
}

double grid_sup(const RankOneFunction& f, int per_axis) {
  const int d = f.dim();
  std::vector<int> idx(std::size_t(d), 0);
  double best = 0.0;
  for (;;) {
    std::vector<double> x(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
      x[std::size_t(i)] = double(idx[std::size_t(i)]) / (per_axis - 1);
    best = std::max(best, std::abs(f(x)));
    int i = 0;
    while (i < d && ++idx[std::size_t(i)] == per_axis) idx[std::size_t(i++)] = 0;
    if (i == d) return best;
  }
}

}  // namespace

TEST_CASE("regime classification and boundaries") {
  CHECK(regime(1, 2.0) == Regime::Large);
  CHECK(regime(1, 1.0) == Regime::Small);
  CHECK(regime(1, 1.5) == Regime::Moderate);
  CHECK(regime(2, 2.0) == Regime::Small);    // M = r!
  CHECK(regime(2, 8.0) == Regime::Large);    // M = 2^r r!
  CHECK(regime(2, 5.0) == Regime::Moderate);
  CHECK(regime(3, 6.0) == Regime::Small);
  CHECK(regime(3, 48.0) == Regime::Large);
  CHECK(factorial(1) == 1.0);
  CHECK(factorial(3) == 6.0);
  CHECK(factorial(5) == 120.0);
  CHECK_THROWS_AS(SmoothnessClass(0, 1.0, 1), UsageError);
  CHECK_THROWS_AS(SmoothnessClass(1, 0.0, 1), UsageError);
  CHECK_THROWS_AS(SmoothnessClass(1, 1.0, 0), UsageError);
}

TEST_CASE("eval of rank-one products") {
  RankOneFunction ones({constant_factor(1.0, 1), constant_factor(1.0, 1)});
  CHECK(ones({0.3, 0.9}) == 1.0);

  RankOneFunction with_zero({constant_factor(0.0, 1), identity_factor(1)});
  CHECK(with_zero({0.3, 0.9}) == 0.0);

  RankOneFunction xy({identity_factor(1), identity_factor(1)});
  CHECK(xy({0.5, 0.5}) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK_THROWS_AS(xy({0.5}), UsageError);
}

TEST_CASE("sup_norm is the product of exact factor norms") {
  RankOneFunction ones({constant_factor(1.0, 2), constant_factor(1.0, 2)});
  CHECK(ones.sup_norm() == 1.0);

  RankOneFunction xy({identity_factor(1), one_minus_x(1)});
  CHECK(xy.sup_norm() == doctest::Approx(1.0).epsilon(1e-15));

  RankOneFunction ghat({left_hat(), left_hat(), left_hat()});
  CHECK(ghat.sup_norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(ghat({0.0, 0.0, 0.0})) == doctest::Approx(1.0));
}

TEST_CASE("eval is a left-to-right product, bit for bit") {
  SmoothnessClass cls(2, 2.0, 3);
  const RankOneFunction f = random_rank_one(cls, 99);
  auto gen = make_stream(1234, 0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> x{unif(gen), unif(gen), unif(gen)};
    double prod = 1.0;
    for (int i = 0; i < 3; ++i) prod *= f.factors()[std::size_t(i)](x[std::size_t(i)]);
    CHECK(f(x) == prod);
  }
}

TEST_CASE("random factors certify their cached bounds") {
  for (int r = 1; r <= 3; ++r)
    for (double M : {0.5, 1.0, 3.0, 10.0}) {
      SmoothnessClass cls(r, M, 1);
      for (std::uint64_t s = 0; s < 20; ++s) {
        auto gen = make_stream(s, 0);
        const UnivariateFactor g = random_factor(cls, gen);
        CHECK(g.sup_norm() <= 1.0 + 1e-12);
        CHECK(g.deriv_r_sup() <= M + 1e-9);
        CHECK(in_class(g, cls));
      }
    }
}

TEST_CASE("finite-difference check of the r-th derivative bound") {
  SmoothnessClass cls(2, 2.0, 1);
  auto gen = make_stream(0xc0ffee, 0);
  const UnivariateFactor g = random_factor(cls, gen);
  // Second differences on a 10^4 grid, stepping inside one piece at a time.
  const int n = 10000;
  const double h = 1.0 / n;
  double worst = 0.0;
  for (int i = 1; i < n; ++i) {
    const double x = i * h;
    bool near_break = false;
    for (double b : g.breakpoints())
      if (std::abs(x - b) < 2 * h) near_break = true;
    if (near_break) continue;
    const double dd = (g(x - h) - 2 * g(x) + g(x + h)) / (h * h);
    worst = std::max(worst, std::abs(dd));
  }
  CHECK(worst <= g.deriv_r_sup() + 1e-6);
}

TEST_CASE("finite differences never exceed the cached bound, many seeds") {
  for (int r = 1; r <= 2; ++r) {
    SmoothnessClass cls(r, 3.0, 1);
    for (std::uint64_t s = 100; s < 120; ++s) {
      auto gen = make_stream(s, 0);
      const UnivariateFactor g = random_factor(cls, gen);
      const int n = 10000;
      const double h = 1.0 / n;
      for (int i = 2; i < n - 2; i += 7) {
        const double x = i * h;
        bool near_break = false;
        for (double b : g.breakpoints())
          if (std::abs(x - b) < (r + 1) * h) near_break = true;
        if (near_break) continue;
        double est;
        if (r == 1)
          est = (g(x + h) - g(x - h)) / (2 * h);
        else
          est = (g(x - h) - 2 * g(x) + g(x + h)) / (h * h);
        CHECK(std::abs(est) <= g.deriv_r_sup() + 1e-6);
      }
    }
  }
}

TEST_CASE("sup_norm matches a grid estimate for random functions") {
  for (int d = 1; d <= 3; ++d) {
    SmoothnessClass cls(1, 1.0, d);
    const int per_axis = d == 3 ? 41 : 201;
    for (std::uint64_t s = 0; s < std::uint64_t(100 / (d * d)); ++s) {
      const RankOneFunction f = random_rank_one(cls, derive_seed(7, s * 3 + std::uint64_t(d)));
      const double exact = f.sup_norm();
      const double grid = grid_sup(f, per_axis);
      CHECK(grid <= exact + 1e-12);
      // Each factor is 1-Lipschitz-bounded by M = 1, so the grid resolves
      // the max to within d * grid spacing.
      CHECK(exact - grid <= double(d) / (per_axis - 1) + 1e-9);
    }
  }
}

TEST_CASE("sup_norm_argmax attains the norm") {
  SmoothnessClass cls(2, 2.0, 3);
  for (std::uint64_t s = 0; s < 30; ++s) {
    const RankOneFunction f = random_rank_one(cls, derive_seed(11, s));
    CHECK(std::abs(f(f.sup_norm_argmax())) ==
          doctest::Approx(f.sup_norm()).epsilon(1e-10));
  }
}

TEST_CASE("fiber substitutes the anchor") {
  RankOneFunction ones({constant_factor(1.0, 1), constant_factor(1.0, 1)});
  const UnivariateFactor c = ones.fiber(0, {0.4, 0.7});
  CHECK(c(0.0) == 1.0);
  CHECK(c(0.9) == 1.0);

  RankOneFunction xy({identity_factor(1), identity_factor(1)});
  const UnivariateFactor g1 = xy.fiber(0, {0.3, 0.5});
  CHECK(g1(0.2) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(g1(1.0) == doctest::Approx(0.5).epsilon(1e-15));

  const UnivariateFactor g2 = xy.fiber(1, {0.0, 0.9});
  CHECK(g2(0.3) == 0.0);
  CHECK(g2.sup_norm() == 0.0);

  CHECK_THROWS_AS(xy.fiber(2, {0.5, 0.5}), UsageError);
}

TEST_CASE("fiber r-th derivative stays within the class bound") {
  SmoothnessClass cls(2, 3.0, 3);
  auto gen = make_stream(5150, 0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, 2);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const RankOneFunction f = random_rank_one(cls, derive_seed(21, s));
    std::vector<double> z{unif(gen), unif(gen), unif(gen)};
    const UnivariateFactor g = f.fiber(pick(gen), z);
    CHECK(g.deriv_r_sup() <= cls.M + 1e-9);
  }
}

TEST_CASE("sup_error_estimate on known gaps") {
  RankOneFunction x1({identity_factor(1)});
  const DFun zero = [](const std::vector<double>&) { return 0.0; };
  CHECK(sup_error_estimate(x1.as_oracle(), x1.as_oracle(), 1, 64) == 0.0);
  CHECK(sup_error_estimate(x1.as_oracle(), zero, 1, 64) >= 1.0 - 1.0 / 64);

  RankOneFunction ones({constant_factor(1.0, 1), constant_factor(1.0, 1)});
  const DFun threequarters = [](const std::vector<double>&) { return 0.75; };
  CHECK(sup_error_estimate(ones.as_oracle(), threequarters, 2, 256) ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK_THROWS_AS(sup_error_estimate(zero, zero, 2, 1), UsageError);
}

TEST_CASE("random generation is stream-addressed, not order-dependent") {
  SmoothnessClass cls(1, 1.0, 2);
  const RankOneFunction a = random_rank_one(cls, 42);
  const RankOneFunction b = random_rank_one(cls, 42);
  for (double x : {0.1, 0.37, 0.9})
    CHECK(a({x, 1 - x}) == b({x, 1 - x}));
  const RankOneFunction c = random_rank_one(cls, 43);
  bool differs = false;
  for (double x : {0.1, 0.37, 0.9})
    if (a({x, 1 - x}) != c({x, 1 - x})) differs = true;
  CHECK(differs);
}

TEST_CASE("min-norm generator keeps membership and the norm floor") {
  SmoothnessClass cls(2, 2.0, 2);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const RankOneFunction f = random_rank_one_with_min_norm(cls, s, 0.6);
    CHECK(f.sup_norm() >= 0.6 * 0.6 - 1e-12);
    for (const auto& g : f.factors()) CHECK(g.sup_norm() >= 0.6 - 1e-12);
    for (const auto& g : f.factors()) CHECK(in_class(g, cls));
  }
}
