#pragma once

// Exact entropy solutions for the polygonal flux by front tracking. Initial
// data are snapped to the flux grid, every breakpoint spawns the fronts of
// its Riemann fan, fronts move at Rankine-Hugoniot speeds, and collisions are
// resolved by new Riemann problems. Because the flux is exactly piecewise
// linear, the solution stays piecewise constant with grid values for all
// time, and the computed evolution is the entropy solution, not an
// approximation of it.

#include <cstddef>
#include <vector>

#include "lgsim/flux.hpp"
#include "lgsim/profile.hpp"
#include "lgsim/riemann.hpp"

namespace lgsim {

struct Front {
  double pos;
  int left;   // grid index of the value to the left
  int right;  // grid index of the value to the right
  double speed;
};

class FrontTrackingSolution {
 public:
  // Profile at time t in [0, T] (clamped).
  PiecewiseConstantProfile profile(double t) const;

  double horizon() const { return T_; }
  std::size_t interactions() const { return interactions_; }
  std::size_t max_front_count() const { return max_fronts_; }

 private:
  friend FrontTrackingSolution front_tracking_solve(const PiecewiseConstantProfile&,
                                                    const FluxTable&, double, std::size_t);
  struct Epoch {
    double t;
    std::vector<Front> fronts;
  };
  const FluxTable* flux_ = nullptr;
  std::vector<Epoch> epochs_;
  double T_ = 0;
  double background_ = 0;  // value when no fronts remain (constant data)
  std::size_t interactions_ = 0;
  std::size_t max_fronts_ = 0;
};

FrontTrackingSolution front_tracking_solve(const PiecewiseConstantProfile& u0,
                                           const FluxTable& flux, double T,
                                           std::size_t front_cap = 1'000'000);

// Small-time oracle: the superposition of non-interacting Riemann fans around
// each breakpoint, valid for t below (min step length) / (2 max wave speed).
PiecewiseConstantProfile glimm_step_evolution(const PiecewiseConstantProfile& u0,
                                              const FluxTable& flux, double t);

// Snap profile values to the nearest flux grid value (front-tracking input
// normalization; keeps the value set finite).
PiecewiseConstantProfile snap_to_grid(const PiecewiseConstantProfile& u, const FluxTable& flux);

}  // namespace lgsim
