#pragma once

#include <vector>

namespace rankone::poly {

// Dense univariate polynomial, coefficients in ascending order.
using Poly = std::vector<double>;

double eval(const Poly& p, double x);

Poly derivative(const Poly& p);
Poly derivative_n(Poly p, int n);

// Antiderivative with constant term c0.
Poly antiderivative(const Poly& p, double c0);

Poly scaled(Poly p, double c);

// Shift of variable: q(t) = p(t + s).
Poly shifted(const Poly& p, double s);

int degree(const Poly& p);
bool is_zero(const Poly& p, double tol = 1e-13);

// All real roots of p in [a,b], ascending, deduplicated.  Roots are located
// by recursive monotone bracketing: the critical points of p partition [a,b]
// into intervals on which p is monotone, and sign changes are bisected to
// machine precision.  Roots without a sign change (even multiplicity) are
// picked up at critical points where |p| falls below zero_tol.
std::vector<double> real_roots(const Poly& p, double a, double b,
                               double zero_tol = 1e-12);

// Exact maximum of |p| over [a,b]: endpoints plus critical points.
struct SupResult {
  double value;
  double argmax;
};
SupResult sup_abs(const Poly& p, double a, double b);

}  // namespace rankone::poly
