#include "lgsim/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lgsim {

namespace {

// Classify the jump between envelope vertices a < c: a chord spanning no
// interior grid node is one rarefaction step; a spanning chord that the graph
// touches everywhere is a contact, otherwise a shock.
WaveKind classify(const FluxTable& flux, double a, double c, double ga, double gc) {
  bool interior = false;
  bool off_graph = false;
  const double slope = (gc - ga) / (c - a);
  for (std::size_t i = 0; i < flux.rho.size(); ++i) {
    const double r = flux.rho[i];
    if (r <= a || r >= c) continue;
    interior = true;
    const double chord = ga + slope * (r - a);
    if (std::abs(flux.G[i] - chord) > 1e-12 * (1 + std::abs(chord))) off_graph = true;
  }
  if (!interior) return WaveKind::rarefaction_step;
  return off_graph ? WaveKind::shock : WaveKind::contact;
}

}  // namespace

double RiemannFan::value_at(double v) const {
  const std::size_t j = std::lower_bound(speeds.begin(), speeds.end(), v) - speeds.begin();
  return values[j];
}

double RiemannFan::half_speed_gap() const {
  if (speeds.empty()) return 0;
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < speeds.size(); ++i) gap = std::min(gap, speeds[i] - speeds[i - 1]);
  if (!std::isfinite(gap)) gap = 1.0;  // single jump: any unit-scale nudge works
  return gap / 2;
}

RiemannFan solve_riemann(const FluxTable& flux, double lambda, double rho) {
  if (lambda < flux.rho.front() || lambda > flux.rho.back() || rho < flux.rho.front() ||
      rho > flux.rho.back())
    throw DensityOutOfRange("Riemann data outside flux grid");

  RiemannFan fan;
  fan.left = lambda;
  fan.right = rho;
  if (lambda == rho) {
    fan.values = {lambda};
    return fan;
  }

  if (lambda < rho) {
    const PiecewiseLinearFn env =
        convex_envelope(flux, lambda, rho, EnvelopeKind::lower_convex);
    fan.values = env.x;  // vertices left to right, lambda .. rho
    for (std::size_t e = 0; e + 1 < env.x.size(); ++e) {
      fan.speeds.push_back(env.slope(e));
      fan.kinds.push_back(classify(flux, env.x[e], env.x[e + 1], env.y[e], env.y[e + 1]));
    }
  } else {
    const PiecewiseLinearFn env =
        convex_envelope(flux, rho, lambda, EnvelopeKind::upper_concave);
    // vertices run rho .. lambda; the fan runs lambda .. rho as v increases,
    // with speeds the edge slopes in reverse (they increase that way).
    const std::size_t n = env.x.size();
    for (std::size_t i = 0; i < n; ++i) fan.values.push_back(env.x[n - 1 - i]);
    for (std::size_t e = 0; e + 1 < n; ++e) {
      const std::size_t k = n - 2 - e;  // edge k between vertices k, k+1
      fan.speeds.push_back(env.slope(k));
      fan.kinds.push_back(classify(flux, env.x[k], env.x[k + 1], env.y[k], env.y[k + 1]));
    }
  }
  return fan;
}

double riemann_value(const RiemannFan& fan, double x, double t) {
  if (!(t > 0)) throw NonpositiveTime("self-similar evaluation needs t > 0");
  return fan.value_at(x / t);
}

double riemann_flux_value(const FluxTable& flux, const RiemannFan& fan, double v) {
  const double h = fan.value_at(v);
  return flux.eval(h) - v * h;
}

PiecewiseConstantProfile fan_profile(const RiemannFan& fan, double t, double x0) {
  if (!(t > 0)) throw NonpositiveTime("fan profile needs t > 0");
  std::vector<double> xs;
  std::vector<double> vals;
  vals.push_back(fan.values.front());
  for (std::size_t j = 0; j < fan.speeds.size(); ++j) {
    xs.push_back(x0 + fan.speeds[j] * t);
    vals.push_back(fan.values[j + 1]);
  }
  return PiecewiseConstantProfile(std::move(xs), std::move(vals));
}

}  // namespace lgsim
