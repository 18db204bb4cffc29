#include "lgsim/dynamics.hpp"

#include <cmath>

#include "lgsim/profile.hpp"

namespace lgsim {

Configuration bernoulli_product_config(double rho, long long origin, std::size_t size,
                                       Boundary boundary, std::uint64_t site_seed) {
  if (rho < 0 || rho > 1) throw DensityOutOfRange("Bernoulli density must lie in [0,1]");
  Configuration c(origin, size, boundary);
  for (long long s = origin; s < c.end(); ++s)
    if (site_uniform(site_seed, s) > 1.0 - rho) c.set(s, 1);
  return c;
}

Configuration flat_quantized_config(double rho, long long origin, std::size_t size,
                                    Boundary boundary) {
  // Exact particle count round(rho * size), spread by integer quantization.
  Configuration c(origin, size, boundary);
  const long long W = static_cast<long long>(size);
  const long long count = std::llround(rho * static_cast<double>(W));
  long long placed = 0;
  for (long long i = 0; i < W; ++i) {
    const long long want = ((i + 1) * count) / W;
    c.set(origin + i, static_cast<int>(want - placed));
    placed = want;
  }
  return c;
}

Configuration equilibrium_config(const RateModel& model, double rho, long long origin,
                                 std::size_t size, double relax_time, std::uint64_t seed) {
  if (rho < 0 || rho > model.max_occupancy())
    throw DensityOutOfRange("density must lie in [0,K]");
  Configuration c = flat_quantized_config(rho, origin, size, Boundary::periodic);
  if (relax_time > 0) {
    EventStream burn(seed, origin, size, model);
    evolve(c, model, burn, relax_time);
  }
  return c;
}

Configuration make_riemann_config(const RateModel& model, double lambda, double rho,
                                  long long origin, std::size_t size, Boundary boundary,
                                  std::uint64_t seed, double relax_time) {
  const int K = model.max_occupancy();
  if (lambda < 0 || lambda > K || rho < 0 || rho > K)
    throw DensityOutOfRange("step densities must lie in [0,K]");
  const long long mid = origin + static_cast<long long>(size / 2);

  if (K == 1) {
    // exact product equilibria; shared uniforms keep samples monotone in the density
    Configuration c(origin, size, boundary);
    for (long long s = origin; s < c.end(); ++s) {
      const double d = (s < mid) ? lambda : rho;
      if (site_uniform(seed, s) > 1.0 - d) c.set(s, 1);
    }
    return c;
  }

  // No explicit equilibria for K >= 2: relax each side separately on a
  // periodic window, then join the halves at the midpoint.
  if (relax_time < 0) relax_time = static_cast<double>(size);
  Configuration left = equilibrium_config(model, lambda, origin, size, relax_time,
                                          substream(seed, {0x4c, 0}));
  Configuration right = equilibrium_config(model, rho, origin, size, relax_time,
                                           substream(seed, {0x52, 1}));
  Configuration c(origin, size, boundary);
  for (long long s = origin; s < c.end(); ++s) c.set(s, (s < mid ? left : right).at(s));
  return c;
}

Configuration make_profile_config(const RateModel& model, const PiecewiseConstantProfile& u0,
                                  long long N, long long origin, std::size_t size,
                                  Boundary boundary) {
  const int K = model.max_occupancy();
  for (double v : u0.vals)
    if (v < 0 || v > K) throw DensityOutOfRange("profile values must lie in [0,K]");
  auto [lo, hi] = u0.support();
  const long long lo_site = static_cast<long long>(std::floor(lo * static_cast<double>(N))) - 1;
  const long long hi_site = static_cast<long long>(std::ceil(hi * static_cast<double>(N))) + 1;
  if (lo_site < origin || hi_site >= origin + static_cast<long long>(size))
    throw WindowTooSmall("window does not cover the scaled profile support");

  Configuration c(origin, size, boundary);
  double cum = 0;
  long long placed = 0;
  for (long long s = lo_site; s <= hi_site; ++s) {
    cum += u0.value_at(static_cast<double>(s) / static_cast<double>(N));
    const long long want = static_cast<long long>(std::floor(cum + 1e-12));
    c.set(s, static_cast<int>(want - placed));
    placed = want;
  }
  return c;
}

}  // namespace lgsim
