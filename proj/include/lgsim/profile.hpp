#pragma once

// Piecewise constant density profiles on the real line. Value vals[i] holds
// on [xs[i-1], xs[i]) with xs[-1] = -inf and xs[n] = +inf, so there is always
// one more value than breakpoints. Canonical form: breakpoints strictly
// increasing, adjacent values distinct. Compact support means the two
// unbounded values are zero.

#include <functional>
#include <vector>

#include "lgsim/errors.hpp"

namespace lgsim {

struct PiecewiseConstantProfile {
  std::vector<double> xs;    // breakpoints, strictly increasing
  std::vector<double> vals;  // vals.size() == xs.size() + 1

  PiecewiseConstantProfile() : vals{0.0} {}
  PiecewiseConstantProfile(std::vector<double> breakpoints, std::vector<double> values);

  double value_at(double x) const;
  bool compact_support() const { return vals.front() == 0.0 && vals.back() == 0.0; }

  // Integral of the profile (requires compact support).
  double mass() const;

  // Support interval [lo, hi]; zero-width at 0 for the zero profile.
  std::pair<double, double> support() const;

  // CDF value at x: integral over (-inf, x]. Continuous, piecewise linear.
  double cdf(double x) const;

  // Merge equal adjacent values and drop degenerate breakpoints.
  void canonicalize();

  friend bool operator==(const PiecewiseConstantProfile& a,
                         const PiecewiseConstantProfile& b) = default;
};

// Single step: `value` on [lo, hi), zero outside.
PiecewiseConstantProfile indicator_profile(double value, double lo, double hi);

// Sum of absolute jumps.
double total_variation(const PiecewiseConstantProfile& u);

// L1 distance between two compactly supported profiles.
double l1_distance(const PiecewiseConstantProfile& a, const PiecewiseConstantProfile& b);

// sup_x |A((-inf,x]) - B((-inf,x])| for compactly supported profiles; both
// CDFs are piecewise linear so the sup is attained at a merged breakpoint.
double delta_distance(const PiecewiseConstantProfile& a, const PiecewiseConstantProfile& b);

// Restriction of a profile to [lo, hi], zero outside (compact by
// construction; used to compare against windowed observations).
PiecewiseConstantProfile clip_profile(const PiecewiseConstantProfile& u, double lo, double hi);

// Mean-preserving projection onto cells of length `step`, with cell means
// snapped to `grid` values by error diffusion: each cell takes the grid value
// nearest to its mean plus the carried mass defect, which keeps the CDF error
// within half a grid spacing times the cell length.
PiecewiseConstantProfile approximate_profile(const PiecewiseConstantProfile& u, double step,
                                             const std::vector<double>& grid);

// Same, for an arbitrary sampled density with the given compact support.
// Cell means are computed by adaptive Simpson quadrature.
PiecewiseConstantProfile approximate_profile(const std::function<double(double)>& u, double lo,
                                             double hi, double step,
                                             const std::vector<double>& grid);

}  // namespace lgsim
