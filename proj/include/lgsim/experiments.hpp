#pragma once

// Experiment harness: each runner builds its initial states, evolves them on
// seeded substreams, compares against the conservation-law prediction and
// returns a report. Reports regenerate byte-identically from (spec, seed);
// wall-clock fields live in the last CSV column and in manifest wall_* keys
// so they can be stripped for comparisons.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lgsim/config.hpp"
#include "lgsim/dynamics.hpp"
#include "lgsim/flux.hpp"
#include "lgsim/front_tracking.hpp"
#include "lgsim/profile.hpp"
#include "lgsim/rate_model.hpp"
#include "lgsim/riemann.hpp"

namespace lgsim {

// Speed at which information spreads through the particle system, calibrated
// as twice the mean absolute jump rate per site.
double propagation_speed(const RateModel& model);

// max(V, propagation speed): the window-sizing bound.
double spread_bound(const RateModel& model);

// Window wide enough that nothing can travel from the boundary into the
// observation region: half-width N (support + bound T) + margin, centered.
struct WindowPlan {
  long long origin = 0;
  std::size_t size = 0;
};
WindowPlan plan_window(long long N, double center, double support_halfwidth, double bound,
                       double T, long long margin = 64);

// Shift v off the fan's jump speeds by half the smallest speed gap if it sits
// within tol of one (observers must not ride a discontinuity).
double nudge_off_speeds(const RiemannFan& fan, double v, double tol = 1e-9);

struct ConvergenceRow {
  long long N = 0;
  double t = 0;
  double delta = 0;
  std::string predicted;
  std::uint64_t seed = 0;
  double wall_ms = 0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  std::vector<std::pair<long long, double>> sup_per_N;  // sorted by N

  double sup_for(long long N) const;
  void write_csv(const std::string& path) const;
};

struct RiemannSpec {
  double lambda = 0;
  double rho = 0;
  std::vector<long long> Ns;
  double t = 1.0;
  std::uint64_t seed = 1;
  double obs_halfwidth = -1;  // default: fan extent + 0.5
  long long margin = 64;
};
ConvergenceReport run_riemann(const RateModel& model, const FluxTable& flux,
                              const RiemannSpec& spec);

struct CurrentSpec {
  double lambda = 0;
  double rho = 0;
  double duration = 2000;  // microscopic time
  std::vector<double> speeds;
  std::uint64_t seed = 1;
  long long margin = 64;
};
struct CurrentRow {
  double v = 0;
  double measured = 0;   // phi_t^v / t
  double predicted = 0;  // G(h(v)) - v h(v)
  long long net_count = 0;
  double wall_ms = 0;
};
struct CurrentReport {
  std::vector<CurrentRow> rows;
  bool conservation_identity_ok = false;  // site-range sum == current difference
  std::uint64_t seed = 0;
  void write_csv(const std::string& path) const;
};
CurrentReport run_current(const RateModel& model, const FluxTable& flux, const CurrentSpec& spec);

struct CauchySpec {
  PiecewiseConstantProfile u0;
  double T = 1.0;
  std::vector<long long> Ns;
  int time_points = 20;  // evenly spaced in (0, T]
  std::uint64_t seed = 1;
  long long margin = 64;
};
ConvergenceReport run_cauchy(const RateModel& model, const FluxTable& flux,
                             const CauchySpec& spec);

struct StabilitySpec {
  PiecewiseConstantProfile lower;  // quantized per N; must be <= upper where sampled
  PiecewiseConstantProfile upper;
  double gamma = 0.05;
  std::vector<long long> Ns;
  int replicates = 100;
  double T = 1.0;
  int time_points = 25;
  std::uint64_t seed = 1;
  long long margin = 64;
};
struct StabilityRow {
  long long N = 0;
  int exceedances = 0;
  int replicates = 0;
  double max_excess = 0;  // largest Delta_t - Delta_0 observed
  double wall_ms = 0;
};
struct StabilityReport {
  std::vector<StabilityRow> rows;
  double gamma = 0;
  std::uint64_t seed = 0;
  void write_csv(const std::string& path) const;
};
StabilityReport run_stability(const RateModel& model, const StabilitySpec& spec);

struct PropagationSpec {
  long long x = 0;  // configurations agree on [x, y]
  long long y = 1000;
  double speed = -1;  // candidate propagation speed; default propagation_speed(model)
  double t = 100;
  int replicates = 100;
  int time_points = 20;
  std::uint64_t seed = 1;
};
struct PropagationReport {
  bool vacuous = false;  // interval shorter than 2 v t
  int violations = 0;
  int replicates = 0;
  double speed = 0;
  long long shrunk_lo = 0, shrunk_hi = 0;
  std::uint64_t seed = 0;
  void write_csv(const std::string& path) const;
};
PropagationReport run_propagation(const RateModel& model, const PropagationSpec& spec);

enum class ErgodicFunction { occupancy, local_flux };
struct ErgodicSpec {
  double rho = 0.5;
  std::vector<long long> ls;
  double a = 1.0;
  int replicates = 4;
  ErgodicFunction f = ErgodicFunction::occupancy;
  // rectangle variant [ra,rb] x [rc,rd] scaled by l, run at the largest l
  double ra = 0.5, rb = 1.5, rc = -0.5, rd = 0.5;
  double relax_time = -1;  // default: window size
  std::uint64_t seed = 1;
};
struct ErgodicRow {
  long long l = 0;
  std::string kind;  // "right", "left", "rect"
  double mean = 0;
  double ci = 0;
  double wall_ms = 0;
};
struct ErgodicReport {
  std::vector<ErgodicRow> rows;
  std::uint64_t seed = 0;
  const ErgodicRow* find(long long l, const std::string& kind) const;
  void write_csv(const std::string& path) const;
};
ErgodicReport run_ergodic(const RateModel& model, const ErgodicSpec& spec);

// Run manifest: provenance keys, one per line, sorted. wall_* keys carry
// timing and are excluded from determinism comparisons.
void write_manifest(const std::map<std::string, std::string>& entries, const std::string& path);

}  // namespace lgsim
