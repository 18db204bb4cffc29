#include "lgsim/empirical.hpp"

#include <algorithm>
#include <cmath>

namespace lgsim {

EmpiricalCDF::EmpiricalCDF(const Configuration& config, long long N) : N_(N) {
  if (N < 1) throw DensityOutOfRange("scale N must be >= 1");
  double acc = 0;
  const double invN = 1.0 / static_cast<double>(N);
  for (long long s = config.origin(); s < config.end(); ++s) {
    const int v = config.at(s);
    if (v > 0) {
      acc += v * invN;
      xs_.push_back(static_cast<double>(s) * invN);
      cum_.push_back(acc);
    }
  }
}

double EmpiricalCDF::value(double x) const {
  std::size_t i = std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin();
  return i == 0 ? 0.0 : cum_[i - 1];
}

double EmpiricalCDF::left_value(double x) const {
  std::size_t i = std::lower_bound(xs_.begin(), xs_.end(), x) - xs_.begin();
  return i == 0 ? 0.0 : cum_[i - 1];
}

double delta_distance(const EmpiricalCDF& a, const EmpiricalCDF& b) {
  double best = 0;
  auto consider = [&](double x) {
    best = std::max(best, std::abs(a.value(x) - b.value(x)));
    best = std::max(best, std::abs(a.left_value(x) - b.left_value(x)));
  };
  for (double x : a.breakpoints()) consider(x);
  for (double x : b.breakpoints()) consider(x);
  return best;
}

double delta_distance(const EmpiricalCDF& a, const PiecewiseConstantProfile& b) {
  double best = 0;
  auto consider = [&](double x) {
    const double fb = b.cdf(x);  // continuous
    best = std::max(best, std::abs(a.value(x) - fb));
    best = std::max(best, std::abs(a.left_value(x) - fb));
  };
  for (double x : a.breakpoints()) consider(x);
  for (double x : b.xs) consider(x);
  return best;
}

double delta_windowed(const EmpiricalCDF& a, const PiecewiseConstantProfile& b, double lo,
                      double hi) {
  const double a0 = a.value(lo);
  const double b0 = b.cdf(lo);
  double best = 0;
  auto consider = [&](double x) {
    if (x < lo || x > hi) return;
    const double fb = b.cdf(x) - b0;
    best = std::max(best, std::abs(a.value(x) - a0 - fb));
    if (x > lo) best = std::max(best, std::abs(a.left_value(x) - a0 - fb));
  };
  for (double x : a.breakpoints()) consider(x);
  for (double x : b.xs) consider(x);
  consider(hi);
  return best;
}

double delta_windowed(const EmpiricalCDF& a, const std::function<double(double)>& cdf,
                      const std::vector<double>& kinks, double lo, double hi) {
  const double a0 = a.value(lo);
  const double b0 = cdf(lo);
  double best = 0;
  auto consider = [&](double x) {
    if (x < lo || x > hi) return;
    const double fb = cdf(x) - b0;
    best = std::max(best, std::abs(a.value(x) - a0 - fb));
    if (x > lo) best = std::max(best, std::abs(a.left_value(x) - a0 - fb));
  };
  for (double x : a.breakpoints()) consider(x);
  for (double x : kinks) consider(x);
  consider(hi);
  return best;
}

double block_density(const Configuration& config, long long center, long long l) {
  const long long lo = center - l;
  const long long hi = center + l;
  if (config.boundary() == Boundary::frozen) {
    if (lo < config.origin() || hi >= config.end())
      throw BlockOutOfWindow("density block extends outside frozen window");
  } else if (2 * l + 1 > static_cast<long long>(config.size())) {
    throw BlockOutOfWindow("density block wider than periodic window");
  }
  long long s = 0;
  for (long long x = lo; x <= hi; ++x) s += config.at(x);
  return static_cast<double>(s) / static_cast<double>(2 * l + 1);
}

}  // namespace lgsim
