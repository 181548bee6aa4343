#include "rankone/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace rankone::poly {

double eval(const Poly& p, double x) {
  double v = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
  return v;
}

Poly derivative(const Poly& p) {
  if (p.size() <= 1) return {};
  Poly q(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) q[i - 1] = p[i] * double(i);
  return q;
}

Poly derivative_n(Poly p, int n) {
  for (int i = 0; i < n; ++i) p = derivative(p);
  return p;
}

Poly antiderivative(const Poly& p, double c0) {
  Poly q(p.size() + 1);
  q[0] = c0;
  for (std::size_t i = 0; i < p.size(); ++i) q[i + 1] = p[i] / double(i + 1);
  return q;
}

Poly scaled(Poly p, double c) {
  for (double& v : p) v *= c;
  return p;
}

Poly shifted(const Poly& p, double s) {
  // Horner-style synthetic shift.
  Poly q(p);
  const int n = int(q.size());
  for (int i = 0; i < n - 1; ++i)
    for (int j = n - 2; j >= i; --j) q[j] += s * q[j + 1];
  return q;
}

int degree(const Poly& p) {
  for (int i = int(p.size()) - 1; i >= 0; --i)
    if (p[i] != 0.0) return i;
  return -1;
}

bool is_zero(const Poly& p, double tol) {
  for (double c : p)
    if (std::abs(c) > tol) return false;
  return true;
}

namespace {

double bisect(const Poly& p, double lo, double hi, double flo) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = eval(p, mid);
    if (fm == 0.0) return mid;
    if ((flo < 0.0) != (fm < 0.0)) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> real_roots(const Poly& p, double a, double b,
                               double zero_tol) {
  std::vector<double> roots;
  const int deg = degree(p);
  if (deg <= 0 || a > b) return roots;
  if (deg == 1) {
    const double x = -p[0] / p[1];
    if (x >= a && x <= b) roots.push_back(x);
    return roots;
  }

  std::vector<double> nodes = real_roots(derivative(p), a, b, zero_tol);
  nodes.push_back(a);
  nodes.push_back(b);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  auto push = [&](double x) {
    if (!roots.empty() && std::abs(roots.back() - x) < 1e-10) return;
    roots.push_back(x);
  };

  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double u = nodes[i], v = nodes[i + 1];
    const double fu = eval(p, u), fv = eval(p, v);
    if (std::abs(fu) <= zero_tol) push(u);
    if ((fu < 0.0) != (fv < 0.0) && std::abs(fu) > zero_tol &&
        std::abs(fv) > zero_tol) {
      push(bisect(p, u, v, fu));
    }
  }
  if (!nodes.empty() && std::abs(eval(p, nodes.back())) <= zero_tol)
    push(nodes.back());

  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double x, double y) { return std::abs(x - y) < 1e-10; }),
              roots.end());
  return roots;
}

SupResult sup_abs(const Poly& p, double a, double b) {
  SupResult best{std::abs(eval(p, a)), a};
  auto consider = [&](double x) {
    const double v = std::abs(eval(p, x));
    if (v > best.value) best = {v, x};
  };
  consider(b);
  for (double x : real_roots(derivative(p), a, b)) consider(x);
  return best;
}

}  // namespace rankone::poly
