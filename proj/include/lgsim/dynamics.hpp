#pragma once

// Deterministic evolution of configurations given an event stream. An event
// (t, x, z, u) moves one particle from x to x+z iff u <= b(eta(x), eta(x+z))
// divided by b_sup (and the rate is positive); otherwise nothing happens.
// Evolving the same stream in segments or in one shot gives identical states,
// and several configurations fed the same events stay sitewise ordered
// whenever their initial states are (attractiveness).

#include <cstdint>
#include <vector>

#include "lgsim/config.hpp"
#include "lgsim/event_stream.hpp"
#include "lgsim/rate_model.hpp"
#include "lgsim/rng.hpp"

namespace lgsim {

// Applies a single event. Returns true if a particle moved.
inline bool apply_event(Configuration& c, const RateModel& model, const PoissonEvent& e) {
  const long long from = c.index_of(e.x);
  if (from < 0) return false;
  long long to = c.index_of(e.x + e.z);
  if (to < 0) return false;  // frozen boundary suppresses the jump
  std::uint8_t* occ = c.data();
  const int n = occ[from];
  const int m = occ[to];
  const double thr = model.threshold(n, m);
  if (thr <= 0.0 || e.u > thr) return false;
  occ[from] = static_cast<std::uint8_t>(n - 1);
  occ[to] = static_cast<std::uint8_t>(m + 1);
  return true;
}

struct NullHook {
  // Called after the acceptance decision, before the configuration changes.
  void pre(double, long long, int, bool) {}
  // Called after the configuration changed (accepted events only).
  void post(double, long long, int) {}
};

// Folds apply_event over all events in (clock, clock + duration].
template <class Hook = NullHook>
void evolve(Configuration& c, const RateModel& model, EventStream& stream, double duration,
            Hook&& hook = Hook{}) {
  const double deadline = stream.clock() + duration;
  while (stream.peek().t <= deadline) {
    const PoissonEvent e = stream.peek();
    stream.consume();
    const long long from = c.index_of(e.x);
    long long to = (from >= 0) ? c.index_of(e.x + e.z) : -1;
    bool accepted = false;
    if (from >= 0 && to >= 0) {
      std::uint8_t* occ = c.data();
      const int n = occ[from];
      const int m = occ[to];
      const double thr = model.threshold(n, m);
      if (thr > 0.0 && e.u <= thr) {
        hook.pre(e.t, e.x, e.z, true);
        occ[from] = static_cast<std::uint8_t>(n - 1);
        occ[to] = static_cast<std::uint8_t>(m + 1);
        hook.post(e.t, e.x, e.z);
        accepted = true;
      }
    }
    if (!accepted) hook.pre(e.t, e.x, e.z, false);
  }
  stream.set_clock(deadline);
}

// All configurations receive the identical event sequence (shared-event
// coupling). Hook::post(t, x, z) fires after every accepted move in any
// component, once per event.
template <class Hook = NullHook>
void couple_evolve(std::vector<Configuration>& cs, const RateModel& model, EventStream& stream,
                   double duration, Hook&& hook = Hook{}) {
  if (cs.empty()) {
    stream.set_clock(stream.clock() + duration);
    return;
  }
  for (std::size_t i = 1; i < cs.size(); ++i)
    if (!cs[i].same_window(cs[0]))
      throw WindowMismatch("coupled configurations must share window and boundary");
  const double deadline = stream.clock() + duration;
  while (stream.peek().t <= deadline) {
    const PoissonEvent e = stream.peek();
    stream.consume();
    bool any = false;
    for (auto& c : cs) any = apply_event(c, model, e) || any;
    if (any) hook.post(e.t, e.x, e.z);
  }
  stream.set_clock(deadline);
}

// Product equilibrium sample for K = 1 via per-site inverse CDF with shared
// uniforms: eta(x) = 1 iff U_x > 1 - rho. Shared uniforms make samples at
// different densities sitewise ordered.
Configuration bernoulli_product_config(double rho, long long origin, std::size_t size,
                                       Boundary boundary, std::uint64_t site_seed);

// Deterministic quantization of a flat density on a window: site x gets
// floor(C(x+1)) - floor(C(x)) particles with C the cumulative density, so the
// particle count is exact to within one everywhere.
Configuration flat_quantized_config(double rho, long long origin, std::size_t size,
                                    Boundary boundary);

// Approximate equilibrium at density rho for models without explicit
// invariant measures: flat quantization on a periodic window followed by a
// relaxation run of `relax_time` time units on a dedicated substream.
Configuration equilibrium_config(const RateModel& model, double rho, long long origin,
                                 std::size_t size, double relax_time, std::uint64_t seed);

// Step initial state: sites left of the window midpoint at density lambda,
// the rest at density rho. Exact product measure for K = 1; burn-in fallback
// otherwise.
Configuration make_riemann_config(const RateModel& model, double lambda, double rho,
                                  long long origin, std::size_t size, Boundary boundary,
                                  std::uint64_t seed, double relax_time = -1);

struct PiecewiseConstantProfile;

// Deterministic quantization of a macroscopic profile at scale N:
// occupancy(x) = floor(S(x)) - floor(S(x-1)) with S(x) = sum_{y<=x} u0(y/N),
// so cumulative sums track N * integral(u0) to within one particle.
Configuration make_profile_config(const RateModel& model, const PiecewiseConstantProfile& u0,
                                  long long N, long long origin, std::size_t size,
                                  Boundary boundary);

}  // namespace lgsim
