#include "lgsim/envelope.hpp"

#include <algorithm>
#include <cmath>

namespace lgsim {

double PiecewiseLinearFn::eval(double at) const {
  if (at <= x.front()) return y.front();
  if (at >= x.back()) return y.back();
  const std::size_t j = std::upper_bound(x.begin(), x.end(), at) - x.begin();
  const double w = (at - x[j - 1]) / (x[j] - x[j - 1]);
  return y[j - 1] + w * (y[j] - y[j - 1]);
}

PiecewiseLinearFn convex_envelope(const FluxTable& flux, double a, double b, EnvelopeKind kind) {
  if (a > b) std::swap(a, b);
  if (a < flux.rho.front() || b > flux.rho.back())
    throw DensityOutOfRange("envelope interval outside flux grid");

  // Node list: a, interior grid nodes, b. Grid-aligned endpoints reuse the
  // exact table values.
  std::vector<double> nx, ny;
  nx.push_back(a);
  ny.push_back(flux.eval(a));
  for (std::size_t i = 0; i < flux.rho.size(); ++i) {
    if (flux.rho[i] > a && flux.rho[i] < b) {
      nx.push_back(flux.rho[i]);
      ny.push_back(flux.G[i]);
    }
  }
  if (b > a) {
    nx.push_back(b);
    ny.push_back(flux.eval(b));
  }

  // Monotone chain; sign +1 keeps the lower hull, -1 the upper hull.
  const double sign = (kind == EnvelopeKind::lower_convex) ? 1.0 : -1.0;
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < nx.size(); ++i) {
    while (hull.size() >= 2) {
      const std::size_t p = hull[hull.size() - 2];
      const std::size_t q = hull[hull.size() - 1];
      // keep q only if it lies strictly on the convex (concave) side
      const double cross = (nx[q] - nx[p]) * (ny[i] - ny[p]) - (nx[i] - nx[p]) * (ny[q] - ny[p]);
      if (sign * cross > 0) break;
      hull.pop_back();
    }
    hull.push_back(i);
  }

  PiecewiseLinearFn env;
  env.x.reserve(hull.size());
  env.y.reserve(hull.size());
  for (std::size_t i : hull) {
    env.x.push_back(nx[i]);
    env.y.push_back(ny[i]);
  }
  return env;
}

}  // namespace lgsim
