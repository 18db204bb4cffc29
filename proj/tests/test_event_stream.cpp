#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lgsim/event_stream.hpp"
#include "lgsim/rate_model.hpp"

using namespace lgsim;

TEST_CASE("events come strictly ordered with valid marks") {
  const RateModel m = k_exclusion(1, {{1, 0.5}, {-2, 0.5}});
  EventStream s(42, -10, 20, m);
  double prev = 0;
  for (int i = 0; i < 1000; ++i) {
    const PoissonEvent e = s.next_event();
    CHECK(e.t > prev);
    prev = e.t;
    CHECK(e.x >= -10);
    CHECK(e.x < 10);
    CHECK((e.z == 1 || e.z == -2));
    CHECK(e.u >= 0.0);
    CHECK(e.u < 1.0);
  }
}

TEST_CASE("same seed replays the identical sequence") {
  const RateModel m = tasep();
  EventStream a(7, 0, 100, m);
  EventStream b(7, 0, 100, m);
  for (int i = 0; i < 200; ++i) {
    const PoissonEvent ea = a.next_event();
    const PoissonEvent eb = b.next_event();
    CHECK(ea.t == eb.t);
    CHECK(ea.x == eb.x);
    CHECK(ea.z == eb.z);
    CHECK(ea.u == eb.u);
  }
}

TEST_CASE("peek does not consume") {
  const RateModel m = tasep();
  EventStream s(3, 0, 10, m);
  const PoissonEvent e1 = s.peek();
  const PoissonEvent e2 = s.peek();
  CHECK(e1.t == e2.t);
  CHECK(e1.x == e2.x);
  const PoissonEvent e3 = s.next_event();
  CHECK(e3.t == e1.t);
  CHECK(s.next_event().t > e3.t);
}

TEST_CASE("inter-arrival mean matches 1/rate within 3 standard errors") {
  const RateModel m = tasep();
  const std::size_t window = 50;
  EventStream s(2024, 0, window, m);
  const double rate = m.b_sup() * window;
  CHECK(s.rate() == rate);
  const int n = 100000;
  double prev = 0, sum = 0;
  for (int i = 0; i < n; ++i) {
    const PoissonEvent e = s.next_event();
    sum += e.t - prev;
    prev = e.t;
  }
  const double mean = sum / n;
  const double se = (1.0 / rate) / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(mean - 1.0 / rate) < 3 * se);
}

TEST_CASE("offset frequencies follow the kernel") {
  const RateModel m = k_exclusion(1, {{1, 0.75}, {-1, 0.25}});
  EventStream s(5, 0, 10, m);
  int right = 0;
  const int n = 40000;
  for (int i = 0; i < n; ++i)
    if (s.next_event().z == 1) ++right;
  const double freq = static_cast<double>(right) / n;
  CHECK(std::abs(freq - 0.75) < 3 * std::sqrt(0.75 * 0.25 / n));
}
