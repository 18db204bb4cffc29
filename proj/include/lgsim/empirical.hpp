#pragma once

// Rescaled empirical measure of a configuration: mass eta(y)/N at y/N,
// held in CDF form. Distances to predictions are exact sup norms of CDF
// differences evaluated at merged breakpoints (both sides are piecewise
// monotone between candidates, so the sup is attained there).

#include <functional>
#include <vector>

#include "lgsim/config.hpp"
#include "lgsim/profile.hpp"

namespace lgsim {

class EmpiricalCDF {
 public:
  EmpiricalCDF() = default;
  EmpiricalCDF(const Configuration& config, long long N);

  long long scale() const { return N_; }
  double total_mass() const { return cum_.empty() ? 0.0 : cum_.back(); }
  const std::vector<double>& breakpoints() const { return xs_; }

  // Right-continuous CDF value at x, and the left limit.
  double value(double x) const;
  double left_value(double x) const;

 private:
  long long N_ = 1;
  std::vector<double> xs_;   // positions y/N with eta(y) > 0, increasing
  std::vector<double> cum_;  // cumulative mass at and left of xs_[i]
};

// sup_x |A - B| over the whole line (total masses may differ).
double delta_distance(const EmpiricalCDF& a, const EmpiricalCDF& b);
double delta_distance(const EmpiricalCDF& a, const PiecewiseConstantProfile& b);

// Windowed, anchored distance for data without compact support:
// sup_{x in [lo,hi]} |(A(x) - A(lo)) - (B(x) - B(lo))|.
double delta_windowed(const EmpiricalCDF& a, const PiecewiseConstantProfile& b, double lo,
                      double hi);

// Same, against an arbitrary continuous nondecreasing CDF given as a callable
// (plus its kink positions). Exact when the callable is monotone between
// candidate points.
double delta_windowed(const EmpiricalCDF& a, const std::function<double(double)>& cdf,
                      const std::vector<double>& kinks, double lo, double hi);

// Average occupancy over sites within distance l of center.
double block_density(const Configuration& config, long long center, long long l);

}  // namespace lgsim
