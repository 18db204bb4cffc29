#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lgsim/dynamics.hpp"
#include "lgsim/flux.hpp"

using namespace lgsim;

// Oracle: E[sum_z z p(z) b(B,B')] with independent Bernoulli(rho) pair,
// enumerated over the four occupancy combinations.
static double bernoulli_pair_flux(const RateModel& m, double rho) {
  double out = 0;
  for (auto& [z, pz] : m.kernel())
    for (int n = 0; n <= 1; ++n)
      for (int mm = 0; mm <= 1; ++mm) {
        const double pn = n == 1 ? rho : 1 - rho;
        const double pm = mm == 1 ? rho : 1 - rho;
        out += z * pz * pn * pm * m.b(n, mm);
      }
  return out;
}

TEST_CASE("local flux vanishes on empty and full configurations") {
  const RateModel m = k_exclusion(2, {{1, 0.5}, {-2, 0.5}});
  const LocalFunction f = local_flux_function(m);
  Configuration zero(-10, 20, Boundary::frozen);
  CHECK(f.eval(zero, 0) == 0.0);
  Configuration full(-10, 20, Boundary::frozen);
  for (long long x = -10; x < 10; ++x) full.set(x, 2);
  CHECK(f.eval(full, 0) == 0.0);
}

TEST_CASE("local flux of the unit step is the bare rate") {
  const RateModel m = tasep();
  const LocalFunction f = local_flux_function(m);
  Configuration c(-5, 10, Boundary::frozen);
  c.set(0, 1);
  CHECK(f.eval(c, 0) == 1.0);  // single term p(1) b(1,0)
  CHECK(f.eval(c, 1) == 0.0);
}

TEST_CASE("local flux counts signed crossings for two-sided kernels") {
  const RateModel m = k_exclusion(1, {{2, 0.5}, {-1, 0.5}});
  const LocalFunction f = local_flux_function(m);
  Configuration c(-5, 12, Boundary::frozen);
  // particle at 0 can jump +2 across the bond; particle at 1 can jump -1 across
  c.set(0, 1);
  CHECK(f.eval(c, 0) == doctest::Approx(0.5 * 1.0).epsilon(1e-15));
  c.set(1, 1);
  // now: +2 jumps from 0 blocked? target 2 empty, fine; from -1 empty; -1 jump
  // from 1 to 0 blocked (target occupied)
  CHECK(f.eval(c, 0) == doctest::Approx(0.5).epsilon(1e-15));
  c.set(2, 1);
  // +2 from 0 now blocked by occupancy at 2; nothing else crosses the bond
  CHECK(f.eval(c, 0) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("analytic flux matches the Bernoulli enumeration oracle") {
  const RateModel m = tasep();
  for (double rho : {0.0, 0.1, 0.25, 0.5, 0.9, 1.0})
    CHECK(analytic_flux(m, rho) == doctest::Approx(bernoulli_pair_flux(m, rho)).epsilon(1e-14));
  CHECK(analytic_flux(m, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(analytic_flux(m, 0.0) == 0.0);

  const RateModel asep = k_exclusion(1, {{1, 2.0 / 3.0}, {-1, 1.0 / 3.0}});
  CHECK(analytic_flux(asep, 0.5) == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
  CHECK(analytic_flux(asep, 0.3) ==
        doctest::Approx(bernoulli_pair_flux(asep, 0.3)).epsilon(1e-14));
}

TEST_CASE("no closed form for K >= 2") {
  const RateModel m = k_exclusion(2, {{1, 1.0}});
  CHECK_THROWS_AS(analytic_flux(m, 0.5), NoClosedForm);
}

TEST_CASE("flux estimate is exactly zero at the frozen extremes") {
  const RateModel m = k_exclusion(2, {{1, 1.0}});
  FluxEstimateParams p;
  p.l = 50;
  p.averaging_time = 10;
  p.replicates = 2;
  const FluxEstimate at0 = estimate_flux(m, 0.0, p);
  CHECK(at0.value == 0.0);
  CHECK(at0.ci == 0.0);
  const FluxEstimate atK = estimate_flux(m, 2.0, p);
  CHECK(atK.value == 0.0);
}

TEST_CASE("monte-carlo estimate agrees with the analytic value for exclusion") {
  const RateModel m = tasep();
  FluxEstimateParams p;
  p.l = 200;
  p.averaging_time = 300;
  p.replicates = 4;
  p.seed = 99;
  const FluxEstimate e = estimate_flux(m, 0.5, p);
  CHECK(std::abs(e.value - 0.25) < 0.02);
  CHECK(e.ci < 0.02);
  CHECK(e.ci > 0.0);
}

TEST_CASE("estimates from different seeds agree within joint confidence") {
  const RateModel m = k_exclusion(2, {{1, 1.0}});
  FluxEstimateParams p;
  p.l = 150;
  p.averaging_time = 200;
  p.replicates = 4;
  p.seed = 1;
  const FluxEstimate a = estimate_flux(m, 1.0, p);
  p.seed = 2;
  const FluxEstimate b = estimate_flux(m, 1.0, p);
  CHECK(a.value > 0.0);
  CHECK(a.value < 1.0);
  CHECK(std::abs(a.value - b.value) <= 3 * (a.ci + b.ci));
}

TEST_CASE("analytic table matches the parabola and pins the endpoints") {
  const RateModel m = tasep();
  FluxTableParams params;
  params.grid_step = 0.1;
  const FluxTable t = build_flux_table(m, params);
  REQUIRE(t.rho.size() == 11);
  CHECK(t.G.front() == 0.0);
  CHECK(t.G.back() == 0.0);
  for (std::size_t i = 0; i < t.rho.size(); ++i)
    CHECK(t.G[i] == doctest::Approx(t.rho[i] * (1 - t.rho[i])).epsilon(1e-12));
  CHECK(t.V == 2.0);
  // midpoint of the [0.2, 0.3] cell: (G(0.2) + G(0.3)) / 2
  CHECK(t.eval(0.25) == doctest::Approx(0.5 * (0.2 * 0.8 + 0.3 * 0.7)).epsilon(1e-12));
  CHECK(t.max_wave_speed() <= t.V + 1e-12);
}

TEST_CASE("table invariants are enforced") {
  CHECK_THROWS_AS(make_flux_table({0.0, 1.0}, {0.0, 0.5}, {0, 0}, 2.0), InvalidRates);
  CHECK_THROWS_AS(make_flux_table({0.0, 0.5, 1.0}, {0.0, 5.0, 0.0}, {0, 0, 0}, 2.0),
                  InvalidRates);
  const FluxTable ok = make_flux_table({0.0, 0.5, 1.0}, {0.0, 0.25, 0.0}, {0, 0, 0}, 2.0);
  CHECK(ok.eval(0.75) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK_THROWS_AS(ok.eval(1.5), DensityOutOfRange);
}

TEST_CASE("grid step must divide K") {
  const RateModel m = tasep();
  FluxTableParams params;
  params.grid_step = 0.3;
  CHECK_THROWS_AS(build_flux_table(m, params), InvalidRates);
}
