#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rankone/smoothness.hpp"

namespace rankone {

struct PointSet {
  int d = 0;
  std::vector<std::vector<double>> points;
  std::string provenance;
  std::optional<double> claimed_dispersion;

  std::size_t size() const { return points.size(); }
};

enum class PointSetMode { Verified, Formula };

inline const char* to_string(PointSetMode m) {
  return m == PointSetMode::Verified ? "verified" : "formula";
}

// First n points of the base-2 digital sequence (direction-number
// construction, natural binary order).  Deterministic; d capped at 32.
PointSet digital_net(long n, int d);

// Exact dispersion: volume of the largest axis-parallel open box in [0,1]^d
// containing no point of P.  Empty P gives 1.  Hard error above d = 6.
double dispersion_exact(const PointSet& P);

// Incremental variant used by verified growth: maintains the set of maximal
// empty boxes under point insertion.
class DispersionTracker {
 public:
  explicit DispersionTracker(int d);
  void insert(const std::vector<double>& p);
  double largest_volume() const;
  std::size_t box_count() const { return boxes_.size(); }

 private:
  struct Box {
    std::array<double, 6> lo, hi;
  };
  double volume(const Box& b) const;
  int d_;
  std::vector<Box> boxes_;
};

// Point set with dispersion <= target.  Verified mode grows a digital net
// (doubling from n = 2d) until the exact-dispersion oracle confirms the
// claim; formula mode takes ceil(2^(7d+1)/target) net points and rests on
// the Larcher net bound.
PointSet low_dispersion_set(double target, int d, PointSetMode mode);

// Cardinality the formula mode would use, without constructing points.
double low_dispersion_formula_size(double target, int d);

// count equispaced points on the main diagonal of [0,1]^d, spanning
// [center-halfwidth, center+halfwidth]; count = 1 degenerates to the center.
PointSet diagonal_set(long count, double center, double halfwidth, int d);

// Size of the Halton-based detector baseline:
// ceil((2^d M^d / eps)^(1/r) * 2^d * pi_d), pi_d = product of first d primes.
struct BaselineSize {
  std::uint64_t value;
  bool saturated;
};
BaselineSize halton_baseline_size(const SmoothnessClass& cls, double eps);

}  // namespace rankone
