#include "lgsim/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>

#include "lgsim/current.hpp"
#include "lgsim/empirical.hpp"
#include "lgsim/model_io.hpp"
#include "lgsim/spacetime.hpp"

namespace lgsim {

namespace {

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

}  // namespace

double propagation_speed(const RateModel& model) {
  return 2.0 * model.b_sup() * model.mean_abs_jump();
}

double spread_bound(const RateModel& model) {
  return std::max(model.flux_lipschitz(), propagation_speed(model));
}

WindowPlan plan_window(long long N, double center, double support_halfwidth, double bound,
                       double T, long long margin) {
  const double need = static_cast<double>(N) * (support_halfwidth + bound * T);
  const long long half = static_cast<long long>(std::ceil(need)) + margin;
  const long long c = std::llround(center * static_cast<double>(N));
  return WindowPlan{c - half, static_cast<std::size_t>(2 * half)};
}

double nudge_off_speeds(const RiemannFan& fan, double v, double tol) {
  for (double s : fan.speeds)
    if (std::abs(v - s) <= tol) return v - fan.half_speed_gap();
  return v;
}

double ConvergenceReport::sup_for(long long N) const {
  for (auto& [n, d] : sup_per_N)
    if (n == N) return d;
  throw IoError("no such N in report");
}

void ConvergenceReport::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "N,t,delta,predicted,seed,wall_ms\n";
  for (auto& r : rows)
    out << r.N << ',' << format_double(r.t) << ',' << format_double(r.delta) << ','
        << r.predicted << ',' << r.seed << ',' << format_double(r.wall_ms) << "\n";
}

ConvergenceReport run_riemann(const RateModel& model, const FluxTable& flux,
                              const RiemannSpec& spec) {
  const RiemannFan fan = solve_riemann(flux, spec.lambda, spec.rho);
  double fan_extent = 0.5;
  for (double s : fan.speeds) fan_extent = std::max(fan_extent, std::abs(s) * spec.t);
  const double L = spec.obs_halfwidth > 0 ? spec.obs_halfwidth : fan_extent + 0.5;
  const double w = spread_bound(model);

  ConvergenceReport report;
  const std::uint64_t init_seed = substream(spec.seed, {0x49});
  for (long long N : spec.Ns) {
    const double t0 = now_ms();
    const WindowPlan win = plan_window(N, 0.0, L, w, spec.t, spec.margin);
    Configuration config = make_riemann_config(model, spec.lambda, spec.rho, win.origin,
                                               win.size, Boundary::frozen, init_seed);
    EventStream stream(substream(spec.seed, {0x52, static_cast<std::uint64_t>(N)}), win.origin,
                       win.size, model);
    evolve(config, model, stream, static_cast<double>(N) * spec.t);

    const EmpiricalCDF emp(config, N);
    const PiecewiseConstantProfile predicted =
        clip_profile(fan_profile(fan, spec.t), -L, L);
    const double delta = delta_windowed(emp, predicted, -L, L);

    ConvergenceRow row;
    row.N = N;
    row.t = spec.t;
    row.delta = delta;
    row.predicted = "fan(" + format_double(spec.lambda) + "," + format_double(spec.rho) + ")";
    row.seed = spec.seed;
    row.wall_ms = now_ms() - t0;
    report.rows.push_back(row);
    report.sup_per_N.emplace_back(N, delta);
  }
  std::sort(report.sup_per_N.begin(), report.sup_per_N.end());
  return report;
}

void CurrentReport::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "v,current,predicted,net_count,seed,wall_ms\n";
  for (auto& r : rows)
    out << format_double(r.v) << ',' << format_double(r.measured) << ','
        << format_double(r.predicted) << ',' << r.net_count << ',' << seed << ','
        << format_double(r.wall_ms) << "\n";
}

CurrentReport run_current(const RateModel& model, const FluxTable& flux,
                          const CurrentSpec& spec) {
  const RiemannFan fan = solve_riemann(flux, spec.lambda, spec.rho);
  std::vector<double> speeds;
  speeds.reserve(spec.speeds.size());
  for (double v : spec.speeds) speeds.push_back(nudge_off_speeds(fan, v));

  double vmax = 1.0;
  for (double v : speeds) vmax = std::max(vmax, std::abs(v));
  const double w = propagation_speed(model);
  const long long half =
      static_cast<long long>(std::ceil((vmax + w) * spec.duration)) + spec.margin;

  const double t0 = now_ms();
  Configuration config =
      make_riemann_config(model, spec.lambda, spec.rho, -half,
                          static_cast<std::size_t>(2 * half), Boundary::frozen,
                          substream(spec.seed, {0x49}));
  const Configuration initial = config;
  EventStream stream(substream(spec.seed, {0x43}), -half, static_cast<std::size_t>(2 * half),
                     model);

  std::vector<ObserverPath> paths;
  paths.reserve(speeds.size());
  for (double v : speeds) paths.push_back(ObserverPath::with_speed(v));
  const std::vector<CurrentRecord> recs =
      track_currents(config, model, stream, spec.duration, paths);
  const double wall = now_ms() - t0;

  CurrentReport report;
  report.seed = spec.seed;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CurrentRow row;
    row.v = speeds[i];
    row.measured = static_cast<double>(recs[i].net()) / spec.duration;
    row.predicted = riemann_flux_value(flux, fan, speeds[i]);
    row.net_count = recs[i].net();
    row.wall_ms = wall;
    report.rows.push_back(row);
  }

  // Exact bookkeeping check: for each observer pair, the current difference
  // equals the change of the particle count between the two observers.
  report.conservation_identity_ok = true;
  for (std::size_t i = 0; i < recs.size(); ++i)
    for (std::size_t j = 0; j < recs.size(); ++j) {
      if (i == j) continue;
      const long long a = recs[i].final_position;
      const long long b = recs[j].final_position;
      if (a > b) continue;
      long long range_now = 0;
      for (long long x = a + 1; x <= b; ++x) range_now += config.at(x);
      long long range_then = 0;
      for (long long x = recs[i].path.start + 1; x <= recs[j].path.start; ++x)
        range_then += initial.at(x);
      if (range_now - range_then != recs[i].net() - recs[j].net())
        report.conservation_identity_ok = false;
    }
  return report;
}

ConvergenceReport run_cauchy(const RateModel& model, const FluxTable& flux,
                             const CauchySpec& spec) {
  const PiecewiseConstantProfile u0 = snap_to_grid(spec.u0, flux);
  if (!u0.compact_support()) throw WindowTooSmall("Cauchy data must be compactly supported");
  const FrontTrackingSolution sol = front_tracking_solve(u0, flux, spec.T);

  const auto [lo, hi] = u0.support();
  const double center = 0.5 * (lo + hi);
  const double halfsupp = 0.5 * (hi - lo);
  const double w = spread_bound(model);

  ConvergenceReport report;
  for (long long N : spec.Ns) {
    const double t0 = now_ms();
    const WindowPlan win = plan_window(N, center, halfsupp, w, spec.T, spec.margin);
    Configuration config =
        make_profile_config(model, u0, N, win.origin, win.size, Boundary::frozen);
    EventStream stream(substream(spec.seed, {0x43, static_cast<std::uint64_t>(N)}), win.origin,
                       win.size, model);

    // hypothesis check before evolution
    {
      ConvergenceRow row;
      row.N = N;
      row.t = 0;
      row.delta = delta_distance(EmpiricalCDF(config, N), u0);
      row.predicted = "u0";
      row.seed = spec.seed;
      report.rows.push_back(row);
    }

    double sup = 0;
    double t_prev = 0;
    for (int j = 1; j <= spec.time_points; ++j) {
      const double t = spec.T * static_cast<double>(j) / spec.time_points;
      evolve(config, model, stream, static_cast<double>(N) * (t - t_prev));
      t_prev = t;
      const double d = delta_distance(EmpiricalCDF(config, N), sol.profile(t));
      sup = std::max(sup, d);
      ConvergenceRow row;
      row.N = N;
      row.t = t;
      row.delta = d;
      row.predicted = "front_tracking";
      row.seed = spec.seed;
      row.wall_ms = now_ms() - t0;
      report.rows.push_back(row);
    }
    report.sup_per_N.emplace_back(N, sup);
  }
  std::sort(report.sup_per_N.begin(), report.sup_per_N.end());
  return report;
}

void StabilityReport::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "N,exceedances,replicates,gamma,max_excess,seed,wall_ms\n";
  for (auto& r : rows)
    out << r.N << ',' << r.exceedances << ',' << r.replicates << ',' << format_double(gamma)
        << ',' << format_double(r.max_excess) << ',' << seed << ','
        << format_double(r.wall_ms) << "\n";
}

StabilityReport run_stability(const RateModel& model, const StabilitySpec& spec) {
  StabilityReport report;
  report.gamma = spec.gamma;
  report.seed = spec.seed;
  const double w = spread_bound(model);

  auto support_hull = [&](const PiecewiseConstantProfile& a, const PiecewiseConstantProfile& b) {
    const auto [alo, ahi] = a.support();
    const auto [blo, bhi] = b.support();
    return std::pair<double, double>{std::min(alo, blo), std::max(ahi, bhi)};
  };
  const auto [lo, hi] = support_hull(spec.lower, spec.upper);
  const double center = 0.5 * (lo + hi);
  const double halfsupp = 0.5 * (hi - lo);

  for (long long N : spec.Ns) {
    const double t0 = now_ms();
    StabilityRow row;
    row.N = N;
    row.replicates = spec.replicates;
    const WindowPlan win = plan_window(N, center, halfsupp, w, spec.T, spec.margin);
    for (int rep = 0; rep < spec.replicates; ++rep) {
      std::vector<Configuration> pair;
      pair.push_back(make_profile_config(model, spec.lower, N, win.origin, win.size,
                                         Boundary::frozen));
      pair.push_back(make_profile_config(model, spec.upper, N, win.origin, win.size,
                                         Boundary::frozen));
      EventStream stream(
          substream(spec.seed,
                    {0x53, static_cast<std::uint64_t>(N), static_cast<std::uint64_t>(rep)}),
          win.origin, win.size, model);
      const double delta0 = delta_distance(EmpiricalCDF(pair[0], N), EmpiricalCDF(pair[1], N));
      double excess = 0;
      for (int j = 1; j <= spec.time_points; ++j) {
        const double dt = spec.T / spec.time_points;
        couple_evolve(pair, model, stream, static_cast<double>(N) * dt);
        const double d = delta_distance(EmpiricalCDF(pair[0], N), EmpiricalCDF(pair[1], N));
        excess = std::max(excess, d - delta0);
      }
      if (excess > spec.gamma) ++row.exceedances;
      row.max_excess = std::max(row.max_excess, excess);
    }
    row.wall_ms = now_ms() - t0;
    report.rows.push_back(row);
  }
  return report;
}

void PropagationReport::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "speed,violations,replicates,vacuous,shrunk_lo,shrunk_hi,seed\n";
  out << format_double(speed) << ',' << violations << ',' << replicates << ','
      << (vacuous ? 1 : 0) << ',' << shrunk_lo << ',' << shrunk_hi << ',' << seed << "\n";
}

PropagationReport run_propagation(const RateModel& model, const PropagationSpec& spec) {
  PropagationReport report;
  report.seed = spec.seed;
  report.replicates = spec.replicates;
  const double v = spec.speed > 0 ? spec.speed : propagation_speed(model);
  report.speed = v;

  const long long shrink = static_cast<long long>(std::ceil(v * spec.t));
  report.shrunk_lo = spec.x + shrink;
  report.shrunk_hi = spec.y - shrink;
  if (report.shrunk_lo > report.shrunk_hi) {
    report.vacuous = true;
    return report;
  }

  const long long pad = 2 * shrink + 64;
  const long long origin = spec.x - pad;
  const std::size_t size = static_cast<std::size_t>(spec.y + pad - origin);
  const int K = model.max_occupancy();

  for (int rep = 0; rep < spec.replicates; ++rep) {
    const std::uint64_t rep_seed =
        substream(spec.seed, {0x50, static_cast<std::uint64_t>(rep)});
    std::vector<Configuration> pair(2, Configuration(origin, size, Boundary::frozen));
    for (long long s = origin; s < pair[0].end(); ++s) {
      const int inside =
          static_cast<int>(std::floor(site_uniform(rep_seed, s) * (K + 1)));
      if (s >= spec.x && s <= spec.y) {
        pair[0].set(s, inside);
        pair[1].set(s, inside);
      } else {
        pair[0].set(s, 0);
        pair[1].set(s, K);
      }
    }
    EventStream stream(substream(rep_seed, {0x45}), origin, size, model);
    bool violated = false;
    for (int j = 1; j <= spec.time_points && !violated; ++j) {
      couple_evolve(pair, model, stream, spec.t / spec.time_points);
      for (long long s = report.shrunk_lo; s <= report.shrunk_hi; ++s)
        if (pair[0].at(s) != pair[1].at(s)) {
          violated = true;
          break;
        }
    }
    if (violated) ++report.violations;
  }
  return report;
}

const ErgodicRow* ErgodicReport::find(long long l, const std::string& kind) const {
  for (auto& r : rows)
    if (r.l == l && r.kind == kind) return &r;
  return nullptr;
}

void ErgodicReport::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "l,kind,mean,ci,seed,wall_ms\n";
  for (auto& r : rows)
    out << r.l << ',' << r.kind << ',' << format_double(r.mean) << ',' << format_double(r.ci)
        << ',' << seed << ',' << format_double(r.wall_ms) << "\n";
}

namespace {

struct MeanCi {
  double mean = 0;
  double ci = 0;
};

MeanCi mean_ci(const std::vector<double>& xs) {
  MeanCi out;
  for (double x : xs) out.mean += x;
  out.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double var = 0;
    for (double x : xs) var += (x - out.mean) * (x - out.mean);
    var /= static_cast<double>(xs.size() - 1);
    out.ci = 1.96 * std::sqrt(var / static_cast<double>(xs.size()));
  }
  return out;
}

}  // namespace

ErgodicReport run_ergodic(const RateModel& model, const ErgodicSpec& spec) {
  ErgodicReport report;
  report.seed = spec.seed;
  const LocalFunction f = spec.f == ErgodicFunction::occupancy
                              ? LocalFunction{0, 0,
                                              [](const Configuration& c, long long i) {
                                                return static_cast<double>(c.at(i));
                                              }}
                              : local_flux_function(model);

  const long long lmax = *std::max_element(spec.ls.begin(), spec.ls.end());
  for (long long l : spec.ls) {
    const double t0 = now_ms();
    const std::size_t size = static_cast<std::size_t>(2 * l + 2 * model.range());
    const long long origin = -static_cast<long long>(size) / 2;
    const double relax =
        spec.relax_time >= 0 ? spec.relax_time : static_cast<double>(size);

    std::vector<double> right, left, rect;
    for (int rep = 0; rep < spec.replicates; ++rep) {
      const std::uint64_t leg_seed = substream(
          spec.seed, {0x45, static_cast<std::uint64_t>(l), static_cast<std::uint64_t>(rep)});
      auto fresh = [&]() {
        Configuration c = flat_quantized_config(spec.rho, origin, size, Boundary::periodic);
        EventStream s(leg_seed, origin, size, model);
        evolve(c, model, s, relax);
        return std::pair<Configuration, EventStream>(std::move(c), std::move(s));
      };
      {
        auto [c, s] = fresh();
        right.push_back(space_time_average(c, model, s, f, spec.a, l, Side::right));
      }
      {
        auto [c, s] = fresh();
        left.push_back(space_time_average(c, model, s, f, spec.a, l, Side::left));
      }
      if (l == lmax) {
        auto [c, s] = fresh();
        rect.push_back(
            space_time_average_rect(c, model, s, f, spec.ra, spec.rb, spec.rc, spec.rd, l));
      }
    }
    const double wall = now_ms() - t0;
    auto push = [&](const char* kind, const std::vector<double>& xs) {
      if (xs.empty()) return;
      const MeanCi mc = mean_ci(xs);
      report.rows.push_back(ErgodicRow{l, kind, mc.mean, mc.ci, wall});
    };
    push("right", right);
    push("left", left);
    push("rect", rect);
  }
  return report;
}

void write_manifest(const std::map<std::string, std::string>& entries, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  for (auto& [k, v] : entries) out << k << '=' << v << "\n";
}

}  // namespace lgsim
