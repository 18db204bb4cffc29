#pragma once

// The macroscopic flux G(rho): expected net particle current across a bond
// under the equilibrium measure of density rho. Exact for K = 1 (product
// Bernoulli equilibria, constant-rate exclusion family); estimated by
// space-time averaging of the local current functional otherwise. Tables are
// sampled on a density grid and interpolated linearly in between.

#include <cstdint>
#include <string>
#include <vector>

#include "lgsim/rate_model.hpp"
#include "lgsim/spacetime.hpp"

namespace lgsim {

struct FluxTable {
  std::vector<double> rho;  // grid, 0 = rho_0 < ... < rho_m = K
  std::vector<double> G;    // values; G.front() == G.back() == 0
  std::vector<double> ci;   // confidence half-widths (0 for analytic entries)
  double V = 0;             // Lipschitz bound carried from the model

  double eval(double r) const;          // linear interpolation
  double grid_step() const;             // max grid spacing
  double max_wave_speed() const;        // max |chord slope| of the polygon
  std::size_t nearest_index(double r) const;
  std::uint64_t hash() const;

  void validate() const;  // invariant checks (endpoints, Lipschitz vs V + CI)
};

// Instantaneous expected net current across the bond (0,1):
// f(eta) = sum_{y<=0<y+z} p(z) b(eta(y), eta(y+z))
//        - sum_{y+z<=0<y} p(z) b(eta(y), eta(y+z)).
LocalFunction local_flux_function(const RateModel& model);

// Exact G for K = 1: sum_z z p(z) b(1,0) rho (1 - rho). Throws NoClosedForm
// for K >= 2.
double analytic_flux(const RateModel& model, double rho);

struct FluxEstimateParams {
  double relax_time = -1;      // default: window size
  double averaging_time = 400;
  long long l = 400;           // shift range
  int replicates = 4;
  std::uint64_t seed = 1;
};

struct FluxEstimate {
  double value = 0;
  double ci = 0;  // 1.96 * standard error over replicates
};

// Canonical-ensemble estimate: periodic window of size 2l + 2M holding
// round(rho * size) particles, relaxed then averaged.
FluxEstimate estimate_flux(const RateModel& model, double rho, const FluxEstimateParams& params);

struct FluxTableParams {
  double grid_step = -1;  // default: K/20
  FluxEstimateParams mc;
  bool force_monte_carlo = false;  // estimate even when a closed form exists
};

FluxTable build_flux_table(const RateModel& model, const FluxTableParams& params = {});

// Table from explicit values (testing and file round-trips).
FluxTable make_flux_table(std::vector<double> rho, std::vector<double> G, std::vector<double> ci,
                          double V);

}  // namespace lgsim
