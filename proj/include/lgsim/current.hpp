#pragma once

// Particle current seen by observers moving along piecewise-constant integer
// paths with unit steps. Every accepted jump y -> y+z crossing the observer
// counts once (rightward if y <= pos < y+z, leftward if y+z <= pos < y), and
// each observer step contributes minus the occupancy of the higher of the two
// sites, signed by the step direction. The net count then matches the change
// of mass to the right of the observer exactly.

#include <cstdint>
#include <vector>

#include "lgsim/config.hpp"
#include "lgsim/event_stream.hpp"
#include "lgsim/rate_model.hpp"

namespace lgsim {

struct ObserverPath {
  // pos(t) = start + sgn(speed) * floor(|speed| * t) when jumps is empty
  // (right-continuous in t); otherwise an explicit list of (time, position)
  // unit steps applied in order.
  double speed = 0.0;
  long long start = 0;
  std::vector<std::pair<double, long long>> jumps;

  static ObserverPath with_speed(double v, long long start = 0) {
    return ObserverPath{v, start, {}};
  }
};

struct CurrentRecord {
  ObserverPath path;
  long long crossings_right = 0;  // rightward particle crossings
  long long crossings_left = 0;   // leftward particle crossings
  long long self_motion = 0;      // observer self-motion term
  long long final_position = 0;

  long long net() const { return crossings_right - crossings_left + self_motion; }
};

// Evolves the configuration for `duration` on the stream while tracking the
// currents of all observers. Paths must be independent of the stream.
std::vector<CurrentRecord> track_currents(Configuration& config, const RateModel& model,
                                          EventStream& stream, double duration,
                                          const std::vector<ObserverPath>& observers);

}  // namespace lgsim
