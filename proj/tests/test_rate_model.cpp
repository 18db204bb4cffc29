#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lgsim/rate_model.hpp"

using namespace lgsim;

// Independent evaluation of the rate-increment bound and the flux Lipschitz
// constant by brute enumeration over the table.
static std::pair<double, double> enumerate_B_V(const RateModel& m) {
  const int K = m.max_occupancy();
  double B = 0;
  for (int a = 0; a <= K; ++a)
    for (int k = 0; k < K; ++k) {
      B = std::max(B, m.b(a, k) - m.b(a, k + 1));
      B = std::max(B, m.b(k + 1, a) - m.b(k, a));
    }
  double sum = 0;
  for (auto& [z, pz] : m.kernel()) sum += std::abs(z) * pz;
  return {B, 2 * B * sum};
}

TEST_CASE("tasep constants") {
  const RateModel m = tasep();
  CHECK(m.max_occupancy() == 1);
  CHECK(m.b_sup() == 1.0);
  auto [B, V] = enumerate_B_V(m);
  CHECK(B == 1.0);
  CHECK(V == 2.0);
  CHECK(m.rate_increment_bound() == B);
  CHECK(m.flux_lipschitz() == V);
  CHECK(m.range() == 1);
  CHECK(m.irreducible());
}

TEST_CASE("totally asymmetric 2-exclusion") {
  const RateModel m = k_exclusion(2, {{1, 1.0}});
  CHECK(m.b_sup() == 1.0);
  CHECK(m.b(1, 1) == 1.0);
  CHECK(m.b(2, 1) == 1.0);
  CHECK(m.b(0, 0) == 0.0);
  CHECK(m.b(1, 2) == 0.0);
  auto [B, V] = enumerate_B_V(m);
  CHECK(m.rate_increment_bound() == B);
  CHECK(m.flux_lipschitz() == V);
}

TEST_CASE("asep drift and constants") {
  const RateModel m = k_exclusion(1, {{1, 2.0 / 3.0}, {-1, 1.0 / 3.0}});
  CHECK(m.mean_jump() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(m.mean_abs_jump() == doctest::Approx(1.0).epsilon(1e-12));
  auto [B, V] = enumerate_B_V(m);
  CHECK(m.flux_lipschitz() == doctest::Approx(V).epsilon(1e-12));
  CHECK(B == 1.0);
}

TEST_CASE("rejects rates out of an empty site") {
  // K=1 with b(0,0)=1 violates b(0,.) = 0
  std::vector<double> b{1, 0, 1, 0};
  CHECK_THROWS_AS(build_model(1, b, {{1, 1.0}}), InvalidRates);
}

TEST_CASE("rejects non-monotone rates") {
  // K=2: b(1,0)=2 > b(2,0)=1 breaks monotonicity in the source occupancy
  std::vector<double> b{0, 0, 0, 2, 1, 0, 1, 1, 0};
  CHECK_THROWS_AS(build_model(2, b, {{1, 1.0}}), InvalidRates);
}

TEST_CASE("rejects b(1,K-1) == 0") {
  std::vector<double> b{0, 0, 0, 0};
  CHECK_THROWS_AS(build_model(1, b, {{1, 1.0}}), InvalidRates);
}

TEST_CASE("rejects bad kernels") {
  std::vector<double> b{0, 0, 1, 0};
  CHECK_THROWS_AS(build_model(1, b, {{0, 1.0}}), InvalidKernel);
  CHECK_THROWS_AS(build_model(1, b, {{1, 0.5}}), InvalidKernel);
  CHECK_THROWS_AS(build_model(1, b, {{1, 0.5}, {1, 0.5}}), InvalidKernel);
  CHECK_THROWS_AS(build_model(1, b, {}), InvalidKernel);
}

TEST_CASE("gcd > 1 support is accepted with a warning flag") {
  const RateModel m = k_exclusion(1, {{2, 1.0}});
  CHECK_FALSE(m.irreducible());
  const RateModel m2 = k_exclusion(1, {{2, 0.5}, {-3, 0.5}});
  CHECK(m2.irreducible());
}

TEST_CASE("model hash distinguishes models") {
  CHECK(tasep().hash() != k_exclusion(2, {{1, 1.0}}).hash());
  CHECK(tasep().hash() == tasep().hash());
}
