#pragma once

#include <cmath>
#include <string>

#include "rankone/errors.hpp"

namespace rankone {

enum class Regime { Large, Moderate, Small };

inline const char* to_string(Regime reg) {
  switch (reg) {
    case Regime::Large: return "Large";
    case Regime::Moderate: return "Moderate";
    case Regime::Small: return "Small";
  }
  return "?";
}

inline double factorial(int r) {
  double v = 1.0;
  for (int i = 2; i <= r; ++i) v *= i;
  return v;
}

// The function class: products of d univariate factors mapping [0,1] into
// [-1,1] whose r-th weak derivative is bounded by M.
struct SmoothnessClass {
  int r;
  double M;
  int d;

  SmoothnessClass(int r_, double M_, int d_) : r(r_), M(M_), d(d_) {
    if (r < 1) throw UsageError("SmoothnessClass: r must be >= 1");
    if (!(M > 0.0)) throw UsageError("SmoothnessClass: M must be > 0");
    if (d < 1) throw UsageError("SmoothnessClass: d must be >= 1");
  }
};

// Boundary conventions: M = r! falls into Small, M = 2^r r! into Large.
inline Regime regime(int r, double M) {
  const double rf = factorial(r);
  if (M >= std::ldexp(rf, r)) return Regime::Large;
  if (M > rf) return Regime::Moderate;
  return Regime::Small;
}

inline Regime regime(const SmoothnessClass& cls) { return regime(cls.r, cls.M); }

}  // namespace rankone
