#pragma once

// Variational Riemann solver for the polygonal flux. For left value lambda <
// right value rho, h(v) = argmin over [lambda, rho] of G(r) - v r, computed
// from the lower convex envelope: envelope edge slopes are the transition
// speeds and envelope vertices the fan plateaus (argmax / upper concave
// envelope when lambda > rho). The self-similar solution is u(x,t) = h(x/t).
//
// At a speed equal to an edge slope the minimizer is not unique; we take the
// plateau on the smaller-|v| side (smaller density for lambda < rho, larger
// for lambda > rho), i.e. h is left-continuous in v. The choice affects a
// finite set of speeds only and no integral quantity.

#include <vector>

#include "lgsim/envelope.hpp"
#include "lgsim/flux.hpp"
#include "lgsim/profile.hpp"

namespace lgsim {

enum class WaveKind { shock, contact, rarefaction_step };

struct RiemannFan {
  double left = 0;   // value as v -> -inf
  double right = 0;  // value as v -> +inf
  std::vector<double> speeds;  // strictly increasing jump speeds
  std::vector<double> values;  // plateau values; values.size() == speeds.size() + 1
  std::vector<WaveKind> kinds; // one per jump

  // h(v), left-continuous: values[j] on (speeds[j], speeds[j+1]].
  double value_at(double v) const;

  // Half of the smallest gap between distinct speeds (fan-specific nudge for
  // observers that would otherwise ride a discontinuity). 0 for constant fans.
  double half_speed_gap() const;
};

RiemannFan solve_riemann(const FluxTable& flux, double lambda, double rho);

// Fan evaluated at (x, t), t > 0.
double riemann_value(const RiemannFan& fan, double x, double t);

// G(h(v)) - v h(v): the current seen by an observer moving at speed v through
// the fan. Differences of this function integrate h.
double riemann_flux_value(const FluxTable& flux, const RiemannFan& fan, double v);

// The fan as a spatial profile at time t > 0, shifted by x0.
PiecewiseConstantProfile fan_profile(const RiemannFan& fan, double t, double x0 = 0.0);

}  // namespace lgsim
