#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lgsim/profile.hpp"

using namespace lgsim;

namespace {

PiecewiseConstantProfile random_profile(std::mt19937_64& gen, int K = 2) {
  std::uniform_real_distribution<double> uni(0, 1);
  std::vector<double> xs;
  std::vector<double> vals{0.0};
  double x = -3;
  const int n = 3 + static_cast<int>(uni(gen) * 6);
  for (int i = 0; i < n; ++i) {
    x += 0.2 + uni(gen);
    xs.push_back(x);
    vals.push_back(i == n - 1 ? 0.0 : std::round(uni(gen) * K * 4) / 4.0);
  }
  return PiecewiseConstantProfile(xs, vals);
}

}  // namespace

TEST_CASE("canonical form merges equal neighbours") {
  PiecewiseConstantProfile p({0.0, 1.0, 2.0}, {0.0, 0.5, 0.5, 0.0});
  CHECK(p.xs.size() == 2);
  CHECK(p.xs[0] == 0.0);
  CHECK(p.xs[1] == 2.0);
  CHECK(p.value_at(0.5) == 0.5);
  CHECK(p.value_at(1.5) == 0.5);
  CHECK(p.value_at(2.0) == 0.0);
  CHECK(p.value_at(-1.0) == 0.0);
}

TEST_CASE("breakpoints must increase") {
  CHECK_THROWS_AS(PiecewiseConstantProfile({1.0, 1.0}, {0.0, 1.0, 0.0}), IoError);
  CHECK_THROWS_AS(PiecewiseConstantProfile({1.0}, {0.0, 1.0, 0.0}), IoError);
}

TEST_CASE("mass and cdf of an indicator") {
  const auto p = indicator_profile(2.0, -1.0, 3.0);
  CHECK(p.mass() == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(p.cdf(-1.0) == 0.0);
  CHECK(p.cdf(0.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(p.cdf(10.0) == doctest::Approx(8.0).epsilon(1e-15));
}

TEST_CASE("total variation of simple shapes") {
  CHECK(total_variation(PiecewiseConstantProfile{}) == 0.0);
  const double K = 3;
  CHECK(total_variation(indicator_profile(K, 0, 1)) == doctest::Approx(2 * K).epsilon(1e-15));
}

TEST_CASE("total variation equals the brute-force sup over point sequences") {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> uni(0, 1);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = random_profile(gen);
    // evaluate on a fine grid plus jitter: the sup over all finite sequences
    // of sum |u(x_{i+1}) - u(x_i)| is attained once points straddle jumps
    std::vector<double> pts;
    for (double x = -4; x < 12; x += 0.01) pts.push_back(x + 0.003 * uni(gen));
    double sum = 0;
    for (std::size_t i = 1; i < pts.size(); ++i)
      sum += std::abs(p.value_at(pts[i]) - p.value_at(pts[i - 1]));
    CHECK(sum == doctest::Approx(total_variation(p)).epsilon(1e-12));
  }
}

TEST_CASE("clip restricts support") {
  const auto p = indicator_profile(1.0, 0.0, 4.0);
  const auto c = clip_profile(p, 1.0, 2.5);
  CHECK(c.value_at(0.5) == 0.0);
  CHECK(c.value_at(1.5) == 1.0);
  CHECK(c.value_at(3.0) == 0.0);
  CHECK(c.mass() == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("cell projection leaves aligned profiles alone") {
  const std::vector<double> grid{0.0, 0.25, 0.5, 0.75, 1.0};
  const auto u = indicator_profile(0.5, 0.0, 1.0);
  const auto v = approximate_profile(u, 0.25, grid);
  CHECK(v == u);
}

TEST_CASE("ramp projects to cell means") {
  std::vector<double> grid;
  for (int i = 0; i <= 8; ++i) grid.push_back(i / 8.0);
  const auto v = approximate_profile([](double x) { return (x < 0 || x > 1) ? 0.0 : x; }, 0.0,
                                     1.0, 0.25, grid);
  CHECK(v.value_at(0.1) == doctest::Approx(0.125).epsilon(1e-9));
  CHECK(v.value_at(0.3) == doctest::Approx(0.375).epsilon(1e-9));
  CHECK(v.value_at(0.6) == doctest::Approx(0.625).epsilon(1e-9));
  CHECK(v.value_at(0.9) == doctest::Approx(0.875).epsilon(1e-9));
}

TEST_CASE("projection error is bounded by (K + grid step) * cell length") {
  std::mt19937_64 gen(13);
  const double K = 2;
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(K * i / 20.0);
  const double gstep = K / 20.0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto u = random_profile(gen, 2);
    for (double step : {0.1, 0.25, 0.5}) {
      const auto v = approximate_profile(u, step, grid);
      CHECK(delta_distance(u, v) <= (K + gstep) * step + 1e-12);
      // step lengths at least the requested cell size
      for (std::size_t i = 1; i < v.xs.size(); ++i)
        CHECK(v.xs[i] - v.xs[i - 1] >= step - 1e-12);
    }
  }
}

TEST_CASE("projection is mean preserving up to the grid snap carry") {
  std::mt19937_64 gen(14);
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(i / 10.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto u = random_profile(gen, 2);
    const double step = 0.3;
    const auto v = approximate_profile(u, step, grid);
    CHECK(std::abs(v.mass() - u.mass()) <= 0.5 * 0.1 * step + 1e-12);
  }
}
