#include "lgsim/spacetime.hpp"

#include <algorithm>
#include <cmath>

#include "lgsim/dynamics.hpp"

namespace lgsim {

namespace {

void check_window(const Configuration& config, const LocalFunction& f, long long site_lo,
                  long long site_hi) {
  if (site_lo > site_hi) throw WindowTooSmall("empty site range");
  if (config.boundary() == Boundary::periodic) {
    const long long span = (site_hi - site_lo + 1) + f.radius + f.extent;
    if (span > static_cast<long long>(config.size()))
      throw WindowTooSmall("periodic window shorter than shift range plus support");
    return;
  }
  if (site_lo - f.radius < config.origin() || site_hi + f.extent >= config.end())
    throw WindowTooSmall("window does not cover shift range plus local support");
}

}  // namespace

double space_time_integral(Configuration& config, const RateModel& model, EventStream& stream,
                           const LocalFunction& f, double duration, long long site_lo,
                           long long site_hi) {
  check_window(config, f, site_lo, site_hi);

  // Cache f(tau_i eta) for every shift in range.
  const long long nshifts = site_hi - site_lo + 1;
  std::vector<double> terms(static_cast<std::size_t>(nshifts));
  double running = 0;
  for (long long i = 0; i < nshifts; ++i) {
    terms[static_cast<std::size_t>(i)] = f.eval(config, site_lo + i);
    running += terms[static_cast<std::size_t>(i)];
  }

  struct Hook {
    Configuration* config;
    const LocalFunction* f;
    long long site_lo, site_hi;
    std::vector<double>* terms;
    double* running;
    double* integral;
    double* t_prev;
    long long wsize;
    bool periodic;

    void refresh_around(long long site) {
      // Shifts whose support [i - radius, i + extent] contains `site`.
      if (periodic) {
        for (long long base : {site, site - wsize, site + wsize})
          update_range(base - f->extent, base + f->radius);
      } else {
        update_range(site - f->extent, site + f->radius);
      }
    }

    void update_range(long long lo, long long hi) {
      lo = std::max(lo, site_lo);
      hi = std::min(hi, site_hi);
      for (long long i = lo; i <= hi; ++i) {
        double& slot = (*terms)[static_cast<std::size_t>(i - site_lo)];
        const double fresh = f->eval(*config, i);
        *running += fresh - slot;
        slot = fresh;
      }
    }

    void pre(double t, long long, int, bool) {
      *integral += *running * (t - *t_prev);
      *t_prev = t;
    }
    void post(double, long long x, int z) {
      refresh_around(x);
      refresh_around(x + z);
    }
  };

  double integral = 0;
  double t_prev = stream.clock();
  const double t_end = stream.clock() + duration;
  Hook hook{&config,  &f,      site_lo, site_hi,
            &terms,   &running, &integral, &t_prev,
            static_cast<long long>(config.size()), config.boundary() == Boundary::periodic};
  evolve(config, model, stream, duration, hook);
  integral += running * (t_end - t_prev);
  return integral;
}

double space_time_average(Configuration& config, const RateModel& model, EventStream& stream,
                          const LocalFunction& f, double a, long long l, Side side) {
  const long long lo = (side == Side::right) ? 0 : -l;
  const long long hi = (side == Side::right) ? l : -1;
  const double integral =
      space_time_integral(config, model, stream, f, a * static_cast<double>(l), lo, hi);
  return integral / (a * static_cast<double>(l) * static_cast<double>(l));
}

double space_time_average_rect(Configuration& config, const RateModel& model,
                               EventStream& stream, const LocalFunction& f, double a, double b,
                               double c, double d, long long l) {
  if (!(a >= 0 && a < b && c < d)) throw WindowTooSmall("rectangle needs 0 <= a < b and c < d");
  const double ld = static_cast<double>(l);
  evolve(config, model, stream, a * ld);  // skip [0, a l)
  const long long lo = static_cast<long long>(std::ceil(c * ld - 1e-12));
  const long long hi = static_cast<long long>(std::floor(d * ld + 1e-12));
  const double integral = space_time_integral(config, model, stream, f, (b - a) * ld, lo, hi);
  return integral / ((b - a) * (d - c) * ld * ld);
}

}  // namespace lgsim
