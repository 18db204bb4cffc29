#pragma once

// Poisson event source driving the graphical construction. One global clock
// of rate b_sup * windowSize emits marks (t, x, z, u): x uniform over the
// window, z drawn from the jump kernel, u uniform on [0,1). The draw order
// per event is fixed (dt, x, z, u), so a stream is a pure function of
// (seed, window, model) and replays are bit-exact.
//
// peek()/consume() expose a one-event lookahead: an event generated while
// probing past a segment boundary stays pending, which makes evolving in two
// segments identical to evolving in one.

#include <cstdint>
#include <vector>

#include "lgsim/rate_model.hpp"
#include "lgsim/rng.hpp"

namespace lgsim {

struct PoissonEvent {
  double t;
  long long x;  // source site (absolute coordinate)
  int z;        // jump offset
  double u;     // acceptance uniform
};

class EventStream {
 public:
  EventStream(std::uint64_t seed, long long window_origin, std::size_t window_size,
              const RateModel& model)
      : seed_(seed),
        origin_(window_origin),
        size_(window_size),
        rate_(model.b_sup() * static_cast<double>(window_size)),
        rng_(seed) {
    kernel_cdf_.reserve(model.kernel().size());
    double acc = 0;
    for (auto& [z, pz] : model.kernel()) {
      acc += pz;
      kernel_cdf_.emplace_back(acc, z);
    }
    kernel_cdf_.back().first = 1.0;
  }

  std::uint64_t seed() const { return seed_; }
  double rate() const { return rate_; }
  double clock() const { return clock_; }
  void set_clock(double t) { clock_ = t; }

  const PoissonEvent& peek() {
    if (!has_pending_) {
      pending_.t = last_t_ + rng_.exponential(rate_);
      pending_.x = origin_ + static_cast<long long>(rng_.below(size_));
      pending_.z = draw_offset();
      pending_.u = rng_.uniform01();
      last_t_ = pending_.t;
      has_pending_ = true;
    }
    return pending_;
  }

  void consume() { has_pending_ = false; }

  // Next event, advancing the stream clock to its time.
  PoissonEvent next_event() {
    PoissonEvent e = peek();
    consume();
    clock_ = e.t;
    return e;
  }

 private:
  int draw_offset() {
    double r = rng_.uniform01();
    for (auto& [cum, z] : kernel_cdf_)
      if (r < cum) return z;
    return kernel_cdf_.back().second;
  }

  std::uint64_t seed_;
  long long origin_;
  std::size_t size_;
  double rate_;
  Rng rng_;
  std::vector<std::pair<double, int>> kernel_cdf_;
  double clock_ = 0;
  double last_t_ = 0;
  PoissonEvent pending_{};
  bool has_pending_ = false;
};

}  // namespace lgsim
