#include "lgsim/current.hpp"

#include <cmath>
#include <limits>

#include "lgsim/dynamics.hpp"

namespace lgsim {

namespace {

// Observer state machine: jump times for speed paths are k/|v|, k = 1, 2, ...
struct ObserverState {
  const ObserverPath* path;
  CurrentRecord rec;
  long long pos;
  std::size_t jump_idx = 0;  // explicit paths
  long long step_count = 0;  // speed paths

  double next_jump_time() const {
    if (!path->jumps.empty()) {
      return jump_idx < path->jumps.size() ? path->jumps[jump_idx].first
                                           : std::numeric_limits<double>::infinity();
    }
    if (path->speed == 0.0) return std::numeric_limits<double>::infinity();
    return static_cast<double>(step_count + 1) / std::abs(path->speed);
  }

  // Apply all observer steps with time <= t against the frozen configuration.
  void advance(double t, const Configuration& config) {
    while (next_jump_time() <= t) {
      long long next_pos;
      if (!path->jumps.empty()) {
        next_pos = path->jumps[jump_idx].second;
        ++jump_idx;
      } else {
        ++step_count;
        next_pos = path->start + (path->speed > 0 ? step_count : -step_count);
      }
      const long long d = next_pos - pos;
      if (d != 0) {
        const long long upper = std::max(pos, next_pos);
        rec.self_motion -= static_cast<long long>(config.at(upper)) * d;
      }
      pos = next_pos;
    }
  }
};

}  // namespace

std::vector<CurrentRecord> track_currents(Configuration& config, const RateModel& model,
                                          EventStream& stream, double duration,
                                          const std::vector<ObserverPath>& observers) {
  for (auto& o : observers) {
    if (!o.jumps.empty() && std::llabs(o.jumps.front().second - o.start) > 1)
      throw WindowMismatch("observer path must move in unit steps");
    for (std::size_t j = 0; j + 1 < o.jumps.size(); ++j) {
      if (!(o.jumps[j].first <= o.jumps[j + 1].first))
        throw WindowMismatch("observer jump times must be nondecreasing");
      if (std::llabs(o.jumps[j + 1].second - o.jumps[j].second) > 1)
        throw WindowMismatch("observer path must move in unit steps");
    }
  }

  std::vector<ObserverState> states;
  states.reserve(observers.size());
  for (auto& o : observers) {
    ObserverState s{&o, CurrentRecord{o}, o.start};
    states.push_back(std::move(s));
  }

  struct Hook {
    std::vector<ObserverState>* states;
    Configuration* config;
    double t0;
    void pre(double t, long long x, int z, bool accepted) {
      for (auto& s : *states) s.advance(t - t0, *config);
      if (!accepted) return;
      for (auto& s : *states) {
        if (z > 0) {
          if (x <= s.pos && s.pos < x + z) ++s.rec.crossings_right;
        } else {
          if (x + z <= s.pos && s.pos < x) ++s.rec.crossings_left;
        }
      }
    }
    void post(double, long long, int) {}
  };

  const double t0 = stream.clock();
  Hook hook{&states, &config, t0};
  evolve(config, model, stream, duration, hook);
  for (auto& s : states) s.advance(duration, config);

  std::vector<CurrentRecord> out;
  out.reserve(states.size());
  for (auto& s : states) {
    s.rec.final_position = s.pos;
    out.push_back(s.rec);
  }
  return out;
}

}  // namespace lgsim
