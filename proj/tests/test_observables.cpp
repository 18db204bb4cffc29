#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lgsim/current.hpp"
#include "lgsim/dynamics.hpp"
#include "lgsim/empirical.hpp"
#include "lgsim/spacetime.hpp"

using namespace lgsim;

TEST_CASE("empirical measure of the empty configuration is zero") {
  Configuration c(0, 50, Boundary::frozen);
  const EmpiricalCDF e(c, 10);
  CHECK(e.total_mass() == 0.0);
  CHECK(e.value(100.0) == 0.0);
}

TEST_CASE("single particle carries mass 1/N at site/N") {
  Configuration c(0, 20, Boundary::frozen);
  c.set(5, 1);
  const EmpiricalCDF e(c, 10);
  CHECK(e.total_mass() == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(e.value(0.4999) == 0.0);
  CHECK(e.value(0.5) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(e.left_value(0.5) == 0.0);
}

TEST_CASE("full block has total mass K and unit-slope CDF") {
  const int K = 3;
  const long long N = 100;
  Configuration c(0, N, Boundary::frozen);
  for (long long x = 0; x < N; ++x) c.set(x, K);
  const EmpiricalCDF e(c, N);
  CHECK(e.total_mass() == doctest::Approx(K).epsilon(1e-12));
  CHECK(e.value(0.5) == doctest::Approx(K * 0.51).epsilon(1e-2));
}

TEST_CASE("delta of an empirical measure with itself is zero") {
  Configuration c = bernoulli_product_config(0.4, -40, 80, Boundary::frozen, 12);
  const EmpiricalCDF e(c, 20);
  CHECK(delta_distance(e, e) == 0.0);
}

TEST_CASE("delta between shifted indicator profiles is the overlap defect") {
  const auto a = indicator_profile(1.0, 0.0, 1.0);
  const auto b = indicator_profile(1.0, 0.5, 1.5);
  CHECK(delta_distance(a, b) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("delta between empirical and profile is exact at breakpoints") {
  // one particle of mass 0.1 at x=0.5 against density 0.1 on [0,1]
  Configuration c(0, 20, Boundary::frozen);
  c.set(5, 1);
  const EmpiricalCDF e(c, 10);
  const auto u = indicator_profile(0.1, 0.0, 1.0);
  CHECK(delta_distance(e, u) == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("delta satisfies the triangle inequality on random data") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> uni(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    auto sample = [&]() {
      Configuration c(0, 60, Boundary::frozen);
      for (long long x = 0; x < 60; ++x)
        if (uni(gen) < 0.4) c.set(x, 1);
      return EmpiricalCDF(c, 30);
    };
    const EmpiricalCDF a = sample(), b = sample(), c = sample();
    const double ab = delta_distance(a, b);
    const double bc = delta_distance(b, c);
    const double ac = delta_distance(a, c);
    CHECK(ac <= ab + bc + 1e-14);
    CHECK(ab == delta_distance(b, a));
  }
}

TEST_CASE("delta is bounded by the L1 distance for profiles") {
  std::mt19937_64 gen(6);
  std::uniform_real_distribution<double> uni(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    auto sample = [&]() {
      std::vector<double> xs;
      std::vector<double> vals{0.0};
      double x = -2;
      for (int i = 0; i < 8; ++i) {
        x += 0.1 + uni(gen);
        xs.push_back(x);
        vals.push_back(i == 7 ? 0.0 : std::floor(uni(gen) * 4) / 2.0);
      }
      return PiecewiseConstantProfile(xs, vals);
    };
    const auto a = sample(), b = sample();
    CHECK(delta_distance(a, b) <= l1_distance(a, b) + 1e-12);
  }
}

TEST_CASE("no events means zero current for a static observer") {
  const RateModel m = tasep();
  Configuration c(0, 30, Boundary::frozen);  // empty: nothing can move
  EventStream s(2, 0, 30, m);
  const auto recs = track_currents(c, m, s, 10.0, {ObserverPath::with_speed(0.0)});
  CHECK(recs[0].net() == 0);
  CHECK(recs[0].crossings_right == 0);
  CHECK(recs[0].crossings_left == 0);
  CHECK(recs[0].self_motion == 0);
}

TEST_CASE("current equals the change of mass right of the observer") {
  // semi-infinite bookkeeping identity, exact per path
  const RateModel m = k_exclusion(2, {{1, 0.6}, {-1, 0.4}});
  Configuration c(-60, 120, Boundary::frozen);
  for (long long x = -20; x < 0; ++x) c.set(x, 2);
  const Configuration initial = c;

  for (double v : {0.0, 0.8, -0.6}) {
    Configuration run = initial;
    EventStream s(9, -60, 120, m);
    const auto recs = track_currents(run, m, s, 30.0, {ObserverPath::with_speed(v)});
    long long right_now = 0, right_then = 0;
    for (long long x = recs[0].final_position + 1; x < run.end(); ++x) right_now += run.at(x);
    for (long long x = recs[0].path.start + 1; x < initial.end(); ++x)
      right_then += initial.at(x);
    CHECK(recs[0].net() == right_now - right_then);
  }
}

TEST_CASE("site-range sum equals the current difference between observers") {
  const RateModel m = tasep();
  Configuration c(-100, 200, Boundary::frozen);
  for (long long x = -40; x < 10; ++x) c.set(x, 1);
  EventStream s(17, -100, 200, m);
  const auto recs = track_currents(c, m, s, 40.0,
                                   {ObserverPath::with_speed(0.2), ObserverPath::with_speed(1.1)});
  const long long pv = recs[0].final_position;
  const long long pw = recs[1].final_position;
  REQUIRE(pv <= pw);
  long long range_sum = 0;
  for (long long x = pv + 1; x <= pw; ++x) range_sum += c.at(x);
  CHECK(range_sum == recs[0].net() - recs[1].net());
}

TEST_CASE("currents of nearby observers differ by at most K per unit distance") {
  const RateModel m = k_exclusion(2, {{1, 1.0}});
  Configuration c = flat_quantized_config(1.0, -80, 160, Boundary::frozen);
  EventStream s(33, -80, 160, m);
  const auto recs = track_currents(c, m, s, 25.0,
                                   {ObserverPath::with_speed(0.5), ObserverPath::with_speed(0.55)});
  const long long dist_t = std::llabs(recs[0].final_position - recs[1].final_position);
  const long long bound = m.max_occupancy() * (dist_t + 0);
  CHECK(std::llabs(recs[0].net() - recs[1].net()) <= bound);
}

TEST_CASE("explicit observer paths accumulate the self-motion term") {
  const RateModel m = tasep();
  Configuration c(0, 10, Boundary::frozen);
  c.set(1, 1);
  EventStream s(1, 0, 10, m);
  // step right onto site 1 at time 1 (no events fire in an empty... the
  // configuration is static only if nothing can move; site 1 can hop right.
  // Use a full-right blockade so the particle is stuck.
  c.set(2, 1);
  c.set(3, 1);
  // positions: 0 -> 1 at t=1, 1 -> 0 at t=2
  ObserverPath path{0.0, 0, {{1.0, 1}, {2.0, 0}}};
  const auto recs = track_currents(c, m, s, 0.5, {path});
  CHECK(recs[0].self_motion == 0);  // no jump yet

  Configuration c2 = c;
  EventStream s2(1, 0, 10, m);
  const auto recs2 = track_currents(c2, m, s2, 3.0, {path});
  // right step onto occupied site 1: -1; left step off site 1: +1

  CHECK(recs2[0].final_position == 0);
  CHECK(recs2[0].self_motion == recs2[0].net() - recs2[0].crossings_right +
                                    recs2[0].crossings_left);
}

TEST_CASE("block density extremes") {
  Configuration zero(0, 101, Boundary::frozen);
  CHECK(block_density(zero, 50, 20) == 0.0);
  Configuration full(0, 101, Boundary::frozen);
  for (long long x = 0; x < 101; ++x) full.set(x, 3);
  CHECK(block_density(full, 50, 20) == 3.0);
  CHECK_THROWS_AS(block_density(zero, 0, 20), BlockOutOfWindow);
}

TEST_CASE("block density concentrates for product samples") {
  Configuration c = bernoulli_product_config(0.5, -6000, 12000, Boundary::frozen, 321);
  const double d = block_density(c, 0, 5000);
  CHECK(d > 0.49);
  CHECK(d < 0.51);
}

TEST_CASE("space-time average of a constant is exact") {
  const RateModel m = tasep();
  Configuration c = flat_quantized_config(0.5, -40, 80, Boundary::periodic);
  EventStream s(4, -40, 80, m);
  const LocalFunction f{0, 0, [](const Configuration&, long long) { return 2.5; }};
  const long long l = 20;
  const double got = space_time_average(c, m, s, f, 1.0, l, Side::right);
  CHECK(got == doctest::Approx(2.5 * (l + 1) / static_cast<double>(l)).epsilon(1e-12));
}

TEST_CASE("left and right shift ranges see the same constant") {
  const RateModel m = tasep();
  const LocalFunction f{0, 0, [](const Configuration&, long long) { return 1.0; }};
  Configuration c = flat_quantized_config(0.5, -40, 80, Boundary::periodic);
  EventStream s(4, -40, 80, m);
  const double right = space_time_average(c, m, s, f, 1.0, 20, Side::right);
  Configuration c2 = flat_quantized_config(0.5, -40, 80, Boundary::periodic);
  EventStream s2(4, -40, 80, m);
  const double left = space_time_average(c2, m, s2, f, 1.0, 20, Side::left);
  CHECK(right == doctest::Approx(21.0 / 20).epsilon(1e-12));
  CHECK(left == doctest::Approx(1.0).epsilon(1e-12));  // l sites vs l+1
}

TEST_CASE("space-time average demands a wide enough window") {
  const RateModel m = tasep();
  Configuration c = flat_quantized_config(0.5, 0, 30, Boundary::frozen);
  EventStream s(4, 0, 30, m);
  const LocalFunction f{0, 0, [](const Configuration& cc, long long i) {
                          return static_cast<double>(cc.at(i));
                        }};
  CHECK_THROWS_AS(space_time_average(c, m, s, f, 1.0, 50, Side::right), WindowTooSmall);
}

TEST_CASE("incremental accumulation matches direct recomputation") {
  // same trajectory, f evaluated incrementally vs recomputed per event
  const RateModel m = k_exclusion(2, {{1, 0.5}, {-1, 0.5}});
  const LocalFunction f{1, 1, [](const Configuration& c, long long i) {
                          return static_cast<double>(c.at(i - 1) * c.at(i + 1)) + c.at(i);
                        }};
  Configuration c1 = flat_quantized_config(1.0, -30, 60, Boundary::periodic);
  EventStream s1(55, -30, 60, m);
  const double inc = space_time_integral(c1, m, s1, f, 5.0, -10, 10);

  // direct: accumulate with a zero-radius wrapper that recomputes everything
  Configuration c2 = flat_quantized_config(1.0, -30, 60, Boundary::periodic);
  EventStream s2(55, -30, 60, m);
  double direct = 0;
  double t_prev = 0;
  auto total = [&](const Configuration& cc) {
    double sum = 0;
    for (long long i = -10; i <= 10; ++i) sum += f.eval(cc, i);
    return sum;
  };
  while (s2.peek().t <= 5.0) {
    const PoissonEvent e = s2.peek();
    direct += total(c2) * (e.t - t_prev);
    t_prev = e.t;
    s2.consume();
    apply_event(c2, m, e);
  }
  direct += total(c2) * (5.0 - t_prev);
  CHECK(inc == doctest::Approx(direct).epsilon(1e-10));
}
