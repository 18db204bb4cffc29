#include "lgsim/flux.hpp"

#include <algorithm>
#include <cmath>

#include "lgsim/dynamics.hpp"
#include "lgsim/rng.hpp"

namespace lgsim {

double FluxTable::eval(double r) const {
  if (r < rho.front() || r > rho.back()) throw DensityOutOfRange("density outside flux grid");
  const std::size_t j = std::upper_bound(rho.begin(), rho.end(), r) - rho.begin();
  if (j == 0) return G.front();
  if (j >= rho.size()) return G.back();
  const double w = (r - rho[j - 1]) / (rho[j] - rho[j - 1]);
  return G[j - 1] + w * (G[j] - G[j - 1]);
}

double FluxTable::grid_step() const {
  double h = 0;
  for (std::size_t i = 1; i < rho.size(); ++i) h = std::max(h, rho[i] - rho[i - 1]);
  return h;
}

double FluxTable::max_wave_speed() const {
  double s = 0;
  for (std::size_t i = 1; i < rho.size(); ++i)
    s = std::max(s, std::abs(G[i] - G[i - 1]) / (rho[i] - rho[i - 1]));
  return s;
}

std::size_t FluxTable::nearest_index(double r) const {
  std::size_t best = 0;
  double bestd = std::abs(r - rho[0]);
  for (std::size_t i = 1; i < rho.size(); ++i) {
    const double d = std::abs(r - rho[i]);
    if (d < bestd) {
      bestd = d;
      best = i;
    }
  }
  return best;
}

std::uint64_t FluxTable::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](double v) {
    std::uint64_t bits;
    static_assert(sizeof bits == sizeof v);
    __builtin_memcpy(&bits, &v, sizeof bits);
    for (int i = 0; i < 8; ++i) {
      h ^= (bits >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  for (double v : rho) mix(v);
  for (double v : G) mix(v);
  mix(V);
  return h;
}

void FluxTable::validate() const {
  if (rho.size() < 2 || rho.size() != G.size() || rho.size() != ci.size())
    throw InvalidRates("flux table shape mismatch");
  for (std::size_t i = 1; i < rho.size(); ++i)
    if (!(rho[i - 1] < rho[i])) throw InvalidRates("flux grid must be strictly increasing");
  if (rho.front() != 0.0) throw InvalidRates("flux grid must start at 0");
  if (G.front() != 0.0 || G.back() != 0.0)
    throw InvalidRates("flux must vanish at empty and full density");
  for (std::size_t i = 0; i < rho.size(); ++i)
    for (std::size_t j = i + 1; j < rho.size(); ++j) {
      const double slack = ci[i] + ci[j] + 1e-12;
      if (std::abs(G[i] - G[j]) > V * (rho[j] - rho[i]) + slack)
        throw InvalidRates("flux table violates the Lipschitz bound");
    }
}

LocalFunction local_flux_function(const RateModel& model) {
  const int M = model.range();
  LocalFunction f;
  f.radius = M - 1 > 0 ? M - 1 : 0;
  f.extent = M;
  f.eval = [model](const Configuration& c, long long i) {
    double plus = 0, minus = 0;
    for (auto& [z, pz] : model.kernel()) {
      if (z > 0) {
        // jumps y -> y+z with y <= i < y+z
        for (long long y = i - z + 1; y <= i; ++y)
          plus += pz * model.b(c.at(y), c.at(y + z));
      } else {
        // jumps y -> y+z with y+z <= i < y
        for (long long y = i + 1; y <= i - z; ++y)
          minus += pz * model.b(c.at(y), c.at(y + z));
      }
    }
    return plus - minus;
  };
  return f;
}

double analytic_flux(const RateModel& model, double rho) {
  if (model.max_occupancy() != 1)
    throw NoClosedForm("no closed-form equilibria for K >= 2; use estimate_flux");
  if (rho < 0 || rho > 1) throw DensityOutOfRange("density must lie in [0,1]");
  // E[b(B, B')] over independent Bernoulli(rho): only b(1,0) survives.
  return model.mean_jump() * model.b(1, 0) * rho * (1.0 - rho);
}

FluxEstimate estimate_flux(const RateModel& model, double rho, const FluxEstimateParams& params) {
  const int K = model.max_occupancy();
  if (rho < 0 || rho > K) throw DensityOutOfRange("density must lie in [0,K]");
  const long long l = params.l;
  const std::size_t size = static_cast<std::size_t>(2 * l + 2 * model.range());
  const long long count = std::llround(rho * static_cast<double>(size));
  if (count == 0 || count == static_cast<long long>(size) * K)
    return {0.0, 0.0};  // empty and full states are frozen, current is exactly 0

  const double relax =
      params.relax_time >= 0 ? params.relax_time : static_cast<double>(size);
  const LocalFunction f = local_flux_function(model);
  const long long origin = -static_cast<long long>(size) / 2;

  std::vector<double> values;
  values.reserve(params.replicates);
  for (int rep = 0; rep < params.replicates; ++rep) {
    Configuration c = flat_quantized_config(rho, origin, size, Boundary::periodic);
    EventStream stream(substream(params.seed, {0xf1, static_cast<std::uint64_t>(rep)}), origin,
                       size, model);
    evolve(c, model, stream, relax);
    values.push_back(space_time_average(c, model, stream, f,
                                        params.averaging_time / static_cast<double>(l), l,
                                        Side::right));
  }

  double mean = 0;
  for (double v : values) mean += v;
  mean /= values.size();
  double var = 0;
  for (double v : values) var += (v - mean) * (v - mean);
  double ci = 0;
  if (values.size() > 1) {
    var /= static_cast<double>(values.size() - 1);
    ci = 1.96 * std::sqrt(var / static_cast<double>(values.size()));
  }
  return {mean, ci};
}

FluxTable build_flux_table(const RateModel& model, const FluxTableParams& params) {
  const int K = model.max_occupancy();
  const double step = params.grid_step > 0 ? params.grid_step : K / 20.0;
  const long long cells = std::llround(K / step);
  if (cells < 1 || std::abs(cells * step - K) > 1e-9)
    throw InvalidRates("grid step must divide K evenly");

  FluxTable table;
  table.V = model.flux_lipschitz();
  const bool analytic = (K == 1) && !params.force_monte_carlo;
  for (long long i = 0; i <= cells; ++i) {
    const double r = (i == cells) ? static_cast<double>(K)
                                  : static_cast<double>(i) * step;
    table.rho.push_back(r);
    if (i == 0 || i == cells) {
      table.G.push_back(0.0);
      table.ci.push_back(0.0);
    } else if (analytic) {
      table.G.push_back(analytic_flux(model, r));
      table.ci.push_back(0.0);
    } else {
      FluxEstimateParams mc = params.mc;
      mc.seed = substream(params.mc.seed, {0x9d, static_cast<std::uint64_t>(i)});
      const FluxEstimate e = estimate_flux(model, r, mc);
      table.G.push_back(e.value);
      table.ci.push_back(e.ci);
    }
  }
  table.validate();
  return table;
}

FluxTable make_flux_table(std::vector<double> rho, std::vector<double> G, std::vector<double> ci,
                          double V) {
  FluxTable t;
  t.rho = std::move(rho);
  t.G = std::move(G);
  t.ci = std::move(ci);
  t.V = V;
  t.validate();
  return t;
}

}  // namespace lgsim
