#include "rankone/interpolation.hpp"

#include <algorithm>
#include <cmath>

#include "rankone/errors.hpp"

namespace rankone {

PiecewisePolynomial::PiecewisePolynomial(int cells,
                                         std::vector<poly::Poly> cell_coeffs)
    : cells_(cells), coeffs_(std::move(cell_coeffs)) {
  if (cells_ < 1 || coeffs_.size() != std::size_t(cells_))
    throw UsageError("PiecewisePolynomial: cell count mismatch");
}

double PiecewisePolynomial::operator()(double x) const {
  int k = int(std::floor(x * cells_));
  k = std::clamp(k, 0, cells_ - 1);
  return poly::eval(coeffs_[k], x - double(k) / double(cells_));
}

std::vector<double> interpolation_nodes(int cell, int cells, int r) {
  const double w = 1.0 / double(cells);
  const double mid = (double(cell) + 0.5) * w;
  std::vector<double> nodes(r);
  for (int j = 0; j < r; ++j)
    nodes[j] = mid + 0.5 * w * std::cos((2.0 * j + 1.0) * M_PI / (2.0 * r));
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

PiecewisePolynomial interpolate_univariate(const UFun& g, int m, int r) {
  if (r < 1) throw UsageError("interpolate_univariate: r must be >= 1");
  if (m < r) throw UsageError("interpolate_univariate: m must be >= r");
  const int K = m / r;

  std::vector<poly::Poly> cells(K);
  for (int k = 0; k < K; ++k) {
    const std::vector<double> nodes = interpolation_nodes(k, K, r);
    std::vector<double> coef(r);  // Newton divided differences
    for (int j = 0; j < r; ++j) coef[j] = g(nodes[j]);
    for (int level = 1; level < r; ++level)
      for (int j = r - 1; j >= level; --j)
        coef[j] = (coef[j] - coef[j - 1]) / (nodes[j] - nodes[j - level]);

    // Expand the Newton form into local monomials about the cell's left edge.
    const double left = double(k) / double(K);
    poly::Poly p{coef[r - 1]};
    for (int j = r - 2; j >= 0; --j) {
      const double c = nodes[j] - left;
      poly::Poly q(p.size() + 1, 0.0);
      for (std::size_t i = 0; i < p.size(); ++i) {
        q[i + 1] += p[i];
        q[i] -= c * p[i];
      }
      q[0] += coef[j];
      p = std::move(q);
    }
    cells[k] = std::move(p);
  }
  return PiecewisePolynomial(K, std::move(cells));
}

long choose_m(const SmoothnessClass& cls, double eps, double c1) {
  if (!(eps > 0.0) || eps >= 1.0) throw UsageError("choose_m: eps in (0,1)");
  if (!(c1 > 0.0)) throw UsageError("choose_m: c1 must be > 0");
  const double crm = 4.0 * std::pow(std::max(1.0, c1 * cls.M), 1.0 / cls.r);
  const double m = std::floor(crm * std::pow(double(cls.d), 1.0 + 1.0 / cls.r) *
                              std::pow(eps, -1.0 / cls.r));
  return std::max(long(m), long(cls.d) * cls.r);
}

Approximant::Approximant(double scale, std::vector<PiecewisePolynomial> coords)
    : scale_(scale), coords_(std::move(coords)) {}

double Approximant::operator()(const std::vector<double>& x) const {
  if (coords_.empty()) return 0.0;
  if (x.size() != coords_.size())
    throw UsageError("Approximant: dimension mismatch");
  double v = scale_;
  for (std::size_t i = 0; i < coords_.size(); ++i) v *= coords_[i](x[i]);
  return v;
}

DFun Approximant::as_oracle() const {
  return [a = *this](const std::vector<double>& x) { return a(x); };
}

Approximant reconstruct(const DFun& f, const std::vector<double>& z_star,
                        double f_at_z_star, const SmoothnessClass& cls,
                        long m) {
  const int d = cls.d;
  if (int(z_star.size()) != d) throw UsageError("reconstruct: anchor dimension");
  if (m < long(d) * cls.r) throw UsageError("reconstruct: m must be >= d*r");
  if (f_at_z_star == 0.0)
    throw std::domain_error("reconstruct: anchor is a zero of f");
  const double log_scale = (1.0 - d) * std::log10(std::abs(f_at_z_star));
  if (log_scale > 280.0)
    throw NumericError("reconstruct: anchor value too small to normalize");

  std::vector<PiecewisePolynomial> coords;
  coords.reserve(std::size_t(d));
  const int mi = int(m / d);
  for (int i = 0; i < d; ++i) {
    std::vector<double> z = z_star;
    auto fiber = [&](double x) {
      z[i] = x;
      return f(z);
    };
    coords.push_back(interpolate_univariate(fiber, mi, cls.r));
  }
  const double scale = std::pow(f_at_z_star, 1.0 - double(d));
  return Approximant(scale, std::move(coords));
}

Approximant reconstruct(const DFun& f, const std::vector<double>& z_star,
                        const SmoothnessClass& cls, long m) {
  return reconstruct(f, z_star, f(z_star), cls, m);
}

}  // namespace rankone
