#include "lgsim/profile.hpp"

#include <algorithm>
#include <cmath>

namespace lgsim {

PiecewiseConstantProfile::PiecewiseConstantProfile(std::vector<double> breakpoints,
                                                   std::vector<double> values)
    : xs(std::move(breakpoints)), vals(std::move(values)) {
  if (vals.size() != xs.size() + 1)
    throw IoError("profile needs one more value than breakpoints");
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i - 1] < xs[i])) throw IoError("profile breakpoints must be strictly increasing");
  canonicalize();
}

void PiecewiseConstantProfile::canonicalize() {
  std::vector<double> nx;
  std::vector<double> nv;
  nv.push_back(vals.front());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (vals[i + 1] != nv.back()) {
      nx.push_back(xs[i]);
      nv.push_back(vals[i + 1]);
    }
  }
  xs = std::move(nx);
  vals = std::move(nv);
}

double PiecewiseConstantProfile::value_at(double x) const {
  // first breakpoint > x; value index equals count of breakpoints <= x
  std::size_t i = std::upper_bound(xs.begin(), xs.end(), x) - xs.begin();
  return vals[i];
}

double PiecewiseConstantProfile::mass() const {
  double m = 0;
  for (std::size_t i = 1; i < xs.size(); ++i) m += vals[i] * (xs[i] - xs[i - 1]);
  return m;
}

std::pair<double, double> PiecewiseConstantProfile::support() const {
  if (xs.empty()) return {0.0, 0.0};
  return {xs.front(), xs.back()};
}

double PiecewiseConstantProfile::cdf(double x) const {
  if (xs.empty()) return 0.0;
  double acc = 0;
  if (x <= xs.front()) return 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (x <= xs[i]) return acc + vals[i] * (x - xs[i - 1]);
    acc += vals[i] * (xs[i] - xs[i - 1]);
  }
  return acc;  // compact support: nothing accumulates past the last breakpoint
}

PiecewiseConstantProfile indicator_profile(double value, double lo, double hi) {
  if (!(lo < hi) || value == 0.0) return PiecewiseConstantProfile{};
  return PiecewiseConstantProfile({lo, hi}, {0.0, value, 0.0});
}

double total_variation(const PiecewiseConstantProfile& u) {
  double tv = 0;
  for (std::size_t i = 0; i + 1 < u.vals.size(); ++i) tv += std::abs(u.vals[i + 1] - u.vals[i]);
  return tv;
}

namespace {

// Visit merged breakpoints of two profiles in increasing order.
template <class F>
void for_merged_breakpoints(const PiecewiseConstantProfile& a, const PiecewiseConstantProfile& b,
                            F&& f) {
  std::size_t i = 0, j = 0;
  while (i < a.xs.size() || j < b.xs.size()) {
    double x;
    if (j >= b.xs.size() || (i < a.xs.size() && a.xs[i] <= b.xs[j]))
      x = a.xs[i];
    else
      x = b.xs[j];
    while (i < a.xs.size() && a.xs[i] == x) ++i;
    while (j < b.xs.size() && b.xs[j] == x) ++j;
    f(x);
  }
}

}  // namespace

double l1_distance(const PiecewiseConstantProfile& a, const PiecewiseConstantProfile& b) {
  double total = 0;
  double prev = 0;
  bool first = true;
  for_merged_breakpoints(a, b, [&](double x) {
    if (!first) total += std::abs(a.value_at(prev) - b.value_at(prev)) * (x - prev);
    prev = x;
    first = false;
  });
  return total;
}

double delta_distance(const PiecewiseConstantProfile& a, const PiecewiseConstantProfile& b) {
  double best = 0;
  for_merged_breakpoints(a, b,
                         [&](double x) { best = std::max(best, std::abs(a.cdf(x) - b.cdf(x))); });
  return best;
}

PiecewiseConstantProfile clip_profile(const PiecewiseConstantProfile& u, double lo, double hi) {
  if (!(lo < hi)) return PiecewiseConstantProfile{};
  std::vector<double> xs{lo};
  std::vector<double> vals{0.0, u.value_at(lo)};
  for (double x : u.xs)
    if (x > lo && x < hi) {
      xs.push_back(x);
      vals.push_back(u.value_at(x));
    }
  xs.push_back(hi);
  vals.push_back(0.0);
  return PiecewiseConstantProfile(std::move(xs), std::move(vals));
}

namespace {

double snap_with_carry(double mean, double step, const std::vector<double>& grid, double& carry) {
  const double want = mean + carry / step;
  double bestv = grid.front();
  double bestd = std::abs(want - bestv);
  for (double g : grid) {
    double d = std::abs(want - g);
    if (d < bestd) {
      bestd = d;
      bestv = g;
    }
  }
  carry += (mean - bestv) * step;
  return bestv;
}

PiecewiseConstantProfile assemble_cells(double lo, std::size_t ncells, double step,
                                        const std::vector<double>& means,
                                        const std::vector<double>& grid) {
  std::vector<double> xs;
  std::vector<double> vals;
  vals.push_back(0.0);
  double carry = 0;
  for (std::size_t k = 0; k < ncells; ++k) {
    xs.push_back(lo + static_cast<double>(k) * step);
    vals.push_back(snap_with_carry(means[k], step, grid, carry));
  }
  xs.push_back(lo + static_cast<double>(ncells) * step);
  vals.push_back(0.0);
  PiecewiseConstantProfile out(std::move(xs), std::move(vals));
  return out;
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, 1e-12, 40);
}

}  // namespace

PiecewiseConstantProfile approximate_profile(const PiecewiseConstantProfile& u, double step,
                                             const std::vector<double>& grid) {
  if (!u.compact_support()) throw WindowTooSmall("profile approximation needs compact support");
  if (u.xs.empty()) return PiecewiseConstantProfile{};
  const double lo = u.xs.front();
  const double hi = u.xs.back();
  const std::size_t ncells = static_cast<std::size_t>(std::ceil((hi - lo) / step - 1e-12));
  std::vector<double> means(ncells, 0.0);
  for (std::size_t k = 0; k < ncells; ++k) {
    const double a = lo + static_cast<double>(k) * step;
    const double b = std::min(a + step, hi);
    means[k] = (u.cdf(b) - u.cdf(a)) / step;  // exact cell mean
  }
  return assemble_cells(lo, ncells, step, means, grid);
}

PiecewiseConstantProfile approximate_profile(const std::function<double(double)>& u, double lo,
                                             double hi, double step,
                                             const std::vector<double>& grid) {
  if (!(lo < hi)) return PiecewiseConstantProfile{};
  const std::size_t ncells = static_cast<std::size_t>(std::ceil((hi - lo) / step - 1e-12));
  std::vector<double> means(ncells, 0.0);
  for (std::size_t k = 0; k < ncells; ++k) {
    const double a = lo + static_cast<double>(k) * step;
    const double b = std::min(a + step, hi);
    means[k] = integrate(u, a, b) / step;
  }
  return assemble_cells(lo, ncells, step, means, grid);
}

}  // namespace lgsim
