#pragma once

// Space-time averages of local functions along a trajectory: the integrand
// sum_i tau_i f(eta_t) is piecewise constant between events, so the time
// integral is accumulated exactly, with incremental updates touching only
// the shifts whose support saw the event.

#include <functional>

#include "lgsim/config.hpp"
#include "lgsim/event_stream.hpp"
#include "lgsim/rate_model.hpp"

namespace lgsim {

struct LocalFunction {
  int radius = 0;  // reach to the left: f(tau_i .) reads sites >= i - radius
  int extent = 0;  // reach to the right: f(tau_i .) reads sites <= i + extent
  // Evaluates f(tau_center eta).
  std::function<double(const Configuration&, long long center)> eval;
};

enum class Side { right, left };  // shifts i in [0, l] or i in [-l, -1]

// (1/(a l^2)) * integral over [0, a l] of sum_i tau_i f(eta_t) dt, evolving the
// configuration for duration a*l on the stream.
double space_time_average(Configuration& config, const RateModel& model, EventStream& stream,
                          const LocalFunction& f, double a, long long l, Side side);

// Rectangle variant: time window [a l, b l], site window [c l, d l],
// normalized by (b-a)(d-c) l^2. Consumes the stream from its current clock.
double space_time_average_rect(Configuration& config, const RateModel& model,
                               EventStream& stream, const LocalFunction& f, double a, double b,
                               double c, double d, long long l);

// Workhorse: integral over the next `duration` of sum_{i in [site_lo, site_hi]}
// tau_i f(eta_t) dt (unnormalized).
double space_time_integral(Configuration& config, const RateModel& model, EventStream& stream,
                           const LocalFunction& f, double duration, long long site_lo,
                           long long site_hi);

}  // namespace lgsim
