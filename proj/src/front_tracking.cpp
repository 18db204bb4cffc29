#include "lgsim/front_tracking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lgsim {

namespace {

// Fronts of the Riemann fan between grid indices li and ri, anchored at pos.
void emit_fan(const FluxTable& flux, double pos, int li, int ri, std::vector<Front>& out) {
  if (li == ri) return;
  const RiemannFan fan = solve_riemann(flux, flux.rho[li], flux.rho[ri]);
  for (std::size_t j = 0; j < fan.speeds.size(); ++j) {
    const int a = static_cast<int>(flux.nearest_index(fan.values[j]));
    const int b = static_cast<int>(flux.nearest_index(fan.values[j + 1]));
    out.push_back(Front{pos, a, b, fan.speeds[j]});
  }
}

PiecewiseConstantProfile fronts_to_profile(const FluxTable& flux, const std::vector<Front>& fronts,
                                           double dt, double background) {
  if (fronts.empty()) {
    PiecewiseConstantProfile p;
    p.vals = {background};
    return p;
  }
  std::vector<double> xs;
  std::vector<double> vals;
  vals.push_back(flux.rho[fronts.front().left]);
  for (const Front& f : fronts) {
    xs.push_back(f.pos + f.speed * dt);
    vals.push_back(flux.rho[f.right]);
  }
  // collisions exactly at dt can leave zero-width intervals; drop them
  std::vector<double> cx;
  std::vector<double> cv;
  cv.push_back(vals.front());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!cx.empty() && xs[i] <= cx.back()) {
      cv.back() = vals[i + 1];
    } else {
      cx.push_back(xs[i]);
      cv.push_back(vals[i + 1]);
    }
  }
  return PiecewiseConstantProfile(std::move(cx), std::move(cv));
}

}  // namespace

PiecewiseConstantProfile snap_to_grid(const PiecewiseConstantProfile& u, const FluxTable& flux) {
  PiecewiseConstantProfile out = u;
  for (double& v : out.vals) v = flux.rho[flux.nearest_index(v)];
  out.canonicalize();
  return out;
}

PiecewiseConstantProfile FrontTrackingSolution::profile(double t) const {
  if (t < 0) t = 0;
  if (t > T_) t = T_;
  // last epoch with start time <= t
  std::size_t lo = 0, hi = epochs_.size();
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (epochs_[mid].t <= t)
      lo = mid;
    else
      hi = mid;
  }
  const Epoch& e = epochs_[lo];
  return fronts_to_profile(*flux_, e.fronts, t - e.t, background_);
}

FrontTrackingSolution front_tracking_solve(const PiecewiseConstantProfile& u0,
                                           const FluxTable& flux, double T,
                                           std::size_t front_cap) {
  const PiecewiseConstantProfile u = snap_to_grid(u0, flux);

  FrontTrackingSolution sol;
  sol.flux_ = &flux;
  sol.T_ = T;
  sol.background_ = u.vals.front();

  double scale = 1.0;
  for (double x : u.xs) scale = std::max(scale, std::abs(x));
  scale += flux.max_wave_speed() * T;
  const double eps = 1e-9 * scale;

  std::vector<Front> fronts;
  for (std::size_t k = 0; k < u.xs.size(); ++k) {
    const int li = static_cast<int>(flux.nearest_index(u.vals[k]));
    const int ri = static_cast<int>(flux.nearest_index(u.vals[k + 1]));
    emit_fan(flux, u.xs[k], li, ri, fronts);
  }
  sol.max_fronts_ = fronts.size();
  sol.epochs_.push_back({0.0, fronts});

  double t = 0;
  while (!fronts.empty()) {
    // earliest adjacent collision
    double dt_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < fronts.size(); ++i) {
      const double ds = fronts[i].speed - fronts[i + 1].speed;
      if (ds <= 0) continue;
      const double gap = fronts[i + 1].pos - fronts[i].pos;
      const double dt = gap <= 0 ? 0.0 : gap / ds;
      dt_min = std::min(dt_min, dt);
    }
    if (!(t + dt_min < T)) break;

    t += dt_min;
    for (Front& f : fronts) f.pos += f.speed * dt_min;

    // merge maximal chains of touching, non-separating fronts, left to right
    std::vector<Front> next;
    next.reserve(fronts.size());
    std::size_t i = 0;
    while (i < fronts.size()) {
      std::size_t j = i + 1;
      while (j < fronts.size() && fronts[j].pos - fronts[j - 1].pos <= eps &&
             fronts[j - 1].speed >= fronts[j].speed)
        ++j;
      if (j == i + 1) {
        next.push_back(fronts[i]);
      } else {
        double pos = 0;
        for (std::size_t k = i; k < j; ++k) pos += fronts[k].pos;
        pos /= static_cast<double>(j - i);
        emit_fan(flux, pos, fronts[i].left, fronts[j - 1].right, next);
        ++sol.interactions_;
      }
      i = j;
    }
    fronts = std::move(next);
    sol.max_fronts_ = std::max(sol.max_fronts_, fronts.size());
    if (sol.max_fronts_ > front_cap)
      throw InteractionOverflow("front count exceeded the configured cap");
    sol.epochs_.push_back({t, fronts});
    if (sol.epochs_.size() > front_cap)
      throw InteractionOverflow("interaction count exceeded the configured cap");
  }

  return sol;
}

PiecewiseConstantProfile glimm_step_evolution(const PiecewiseConstantProfile& u0,
                                              const FluxTable& flux, double t) {
  const PiecewiseConstantProfile u = snap_to_grid(u0, flux);
  if (t == 0 || u.xs.empty()) return u;

  double min_step = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < u.xs.size(); ++i)
    min_step = std::min(min_step, u.xs[i] - u.xs[i - 1]);
  const double V = std::max(flux.max_wave_speed(), 1e-300);
  if (!(t < min_step / (2 * V)))
    throw TimeTooLarge("superposition requires t < (min step length)/(2V)");

  std::vector<double> xs;
  std::vector<double> vals;
  vals.push_back(u.vals.front());
  for (std::size_t k = 0; k < u.xs.size(); ++k) {
    const RiemannFan fan = solve_riemann(flux, u.vals[k], u.vals[k + 1]);
    for (std::size_t j = 0; j < fan.speeds.size(); ++j) {
      xs.push_back(u.xs[k] + fan.speeds[j] * t);
      vals.push_back(fan.values[j + 1]);
    }
  }
  return PiecewiseConstantProfile(std::move(xs), std::move(vals));
}

}  // namespace lgsim
