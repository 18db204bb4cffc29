// lgsim: lattice-gas simulator and conservation-law toolkit.
//
// Subcommands build experiments from a model file plus flags (or a flat
// key=value config file via --config), write CSV artifacts and a run
// manifest, and exit 0 on success, 1 on failure, 2 on usage errors.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lgsim/current.hpp"
#include "lgsim/dynamics.hpp"
#include "lgsim/empirical.hpp"
#include "lgsim/experiments.hpp"
#include "lgsim/flux.hpp"
#include "lgsim/front_tracking.hpp"
#include "lgsim/model_io.hpp"
#include "lgsim/rate_model.hpp"

namespace fs = std::filesystem;
using namespace lgsim;

namespace {

constexpr const char* kVersion = "lgsim 0.1.0";

std::string hex64(std::uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RateModel load_model_arg(const std::string& arg) {
  if (arg == "tasep") return tasep();
  if (arg.rfind("kexclusion:", 0) == 0) {
    const int K = std::stoi(arg.substr(11));
    return k_exclusion(K, {{1, 1.0}});
  }
  return load_model(arg);
}

FluxTable flux_for(const RateModel& model, const std::string& flux_path, std::uint64_t seed) {
  if (!flux_path.empty()) return load_flux_table(flux_path);
  FluxTableParams params;
  params.mc.seed = seed;
  return build_flux_table(model, params);
}

std::vector<long long> parse_ll_list(const std::vector<std::string>& items) {
  std::vector<long long> out;
  for (auto& s : items) out.push_back(std::stoll(s));
  return out;
}

struct CommonOut {
  std::string outdir;
  std::map<std::string, std::string> manifest;

  void finish(const std::string& command) {
    if (outdir.empty()) return;
    manifest["command"] = command;
    manifest["version"] = kVersion;
    write_manifest(manifest, (fs::path(outdir) / "manifest.txt").string());
  }
};

void ensure_outdir(std::string& outdir) {
  if (outdir.empty()) return;
  fs::create_directories(outdir);
}

bool check_report(bool ok, const std::string& what) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << what << "\n";
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"attractive lattice gas simulator with entropy-solution comparison"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // shared option storage
  std::string model_arg = "tasep";
  std::string flux_path;
  std::string outdir;
  std::uint64_t seed = 1;
  bool check = false;
  double tol = 0.05;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--model", model_arg, "model file, 'tasep', or 'kexclusion:K'");
    sub->add_option("--seed", seed, "master seed");
    sub->add_option("--out", outdir, "output directory for CSV artifacts");
    sub->set_config("--config", "", "flat key=value config file");
  };

  // validate-model
  auto* validate = app.add_subcommand("validate-model", "check a model file and print constants");
  std::string validate_path;
  validate->add_option("file", validate_path, "model file")->required();

  // simulate
  auto* simulate = app.add_subcommand("simulate", "evolve one configuration, write a snapshot");
  std::string sim_init = "flat:0.5";
  double sim_duration = 100;
  long long sim_n = 1;
  long long sim_halfwidth = 0;
  std::string sim_boundary = "periodic";
  add_common(simulate);
  simulate->add_option("--init", sim_init,
                       "flat:RHO | bernoulli:RHO | riemann:L,R | profile:FILE | snapshot:FILE");
  simulate->add_option("--duration", sim_duration, "evolution time (microscopic)");
  simulate->add_option("--n", sim_n, "scale N for profile quantization");
  simulate->add_option("--halfwidth", sim_halfwidth, "window half-width (0 = auto)");
  simulate->add_option("--boundary", sim_boundary, "periodic | frozen");

  // flux
  auto* fluxcmd = app.add_subcommand("flux", "build a flux table");
  double flux_grid_step = -1;
  FluxEstimateParams flux_mc;
  bool flux_force_mc = false;
  add_common(fluxcmd);
  fluxcmd->add_option("--grid-step", flux_grid_step, "density grid step (default K/20)");
  fluxcmd->add_option("--l", flux_mc.l, "shift range for space-time averaging");
  fluxcmd->add_option("--avg-time", flux_mc.averaging_time, "averaging time");
  fluxcmd->add_option("--relax", flux_mc.relax_time, "burn-in time (default window size)");
  fluxcmd->add_option("--replicates", flux_mc.replicates, "replicates per grid point");
  fluxcmd->add_flag("--monte-carlo", flux_force_mc, "force Monte-Carlo even for K=1");
  fluxcmd->add_flag("--check", check, "compare against the closed form (K=1)");
  fluxcmd->add_option("--tol", tol, "tolerance for --check");

  // riemann
  auto* riemann = app.add_subcommand("riemann", "step initial datum vs the Riemann fan");
  RiemannSpec rspec;
  std::vector<std::string> r_ns{"250", "500", "1000", "2000"};
  add_common(riemann);
  riemann->add_option("--flux", flux_path, "flux table CSV (default: build analytic/MC)");
  riemann->add_option("--lambda", rspec.lambda, "left density")->required();
  riemann->add_option("--rho", rspec.rho, "right density")->required();
  riemann->add_option("--n", r_ns, "scale list")->delimiter(',');
  riemann->add_option("--t", rspec.t, "macroscopic time");
  riemann->add_flag("--check", check, "fail if delta at the largest N exceeds --tol");
  riemann->add_option("--tol", tol, "tolerance for --check");

  // current
  auto* current = app.add_subcommand("current", "observer currents vs fan prediction");
  CurrentSpec cspec;
  std::vector<std::string> c_speeds{"0", "1"};
  add_common(current);
  current->add_option("--flux", flux_path, "flux table CSV");
  current->add_option("--lambda", cspec.lambda, "left density")->required();
  current->add_option("--rho", cspec.rho, "right density")->required();
  current->add_option("--duration", cspec.duration, "microscopic duration");
  current->add_option("--speeds", c_speeds, "observer speeds")->delimiter(',');
  current->add_flag("--check", check, "fail if |measured-predicted| exceeds --tol");
  current->add_option("--tol", tol, "tolerance for --check");

  // cauchy
  auto* cauchy = app.add_subcommand("cauchy", "profile initial datum vs front tracking");
  CauchySpec kspec;
  std::string cauchy_profile;
  std::string cauchy_step;
  std::vector<std::string> k_ns{"250", "500", "1000", "2000"};
  add_common(cauchy);
  cauchy->add_option("--flux", flux_path, "flux table CSV");
  cauchy->add_option("--profile", cauchy_profile, "profile CSV (x,value rows)");
  cauchy->add_option("--step-datum", cauchy_step, "VALUE:LO:HI single-step datum");
  cauchy->add_option("--T", kspec.T, "time horizon");
  cauchy->add_option("--n", k_ns, "scale list")->delimiter(',');
  cauchy->add_option("--times", kspec.time_points, "time grid points");
  cauchy->add_flag("--check", check, "fail if sup_t delta at largest N exceeds --tol");
  cauchy->add_option("--tol", tol, "tolerance for --check");

  // stability
  auto* stability = app.add_subcommand("stability", "coupled-pair Delta excess statistics");
  StabilitySpec sspec;
  std::vector<std::string> s_ns{"250", "500", "1000"};
  std::string lower_arg = "step:1:0:0.5";
  std::string upper_arg = "step:1:0:1";
  add_common(stability);
  stability->add_option("--lower", lower_arg, "step:V:LO:HI or profile file");
  stability->add_option("--upper", upper_arg, "step:V:LO:HI or profile file");
  stability->add_option("--gamma", sspec.gamma, "excess threshold");
  stability->add_option("--n", s_ns, "scale list")->delimiter(',');
  stability->add_option("--replicates", sspec.replicates, "replicates per N");
  stability->add_option("--T", sspec.T, "macroscopic horizon");

  // propagation
  auto* propagation = app.add_subcommand("propagation", "finite propagation speed test");
  PropagationSpec pspec;
  add_common(propagation);
  propagation->add_option("--x", pspec.x, "agreement interval left end");
  propagation->add_option("--y", pspec.y, "agreement interval right end");
  propagation->add_option("--speed", pspec.speed, "candidate speed (default 2 bsup sum|z|p)");
  propagation->add_option("--t", pspec.t, "horizon (microscopic)");
  propagation->add_option("--replicates", pspec.replicates, "replicates");

  // ergodic
  auto* ergodic = app.add_subcommand("ergodic", "space-time averages at equilibrium");
  ErgodicSpec espec;
  std::vector<std::string> e_ls{"100", "300", "500"};
  std::string e_fname = "occupancy";
  add_common(ergodic);
  ergodic->add_option("--rho", espec.rho, "density");
  ergodic->add_option("--l", e_ls, "block sizes")->delimiter(',');
  ergodic->add_option("--a", espec.a, "time horizon multiplier");
  ergodic->add_option("--replicates", espec.replicates, "replicates");
  ergodic->add_option("--f", e_fname, "occupancy | flux");
  ergodic->add_flag("--check", check, "fail if both sides differ from rho by more than --tol");
  ergodic->add_option("--tol", tol, "tolerance for --check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    ensure_outdir(outdir);
    CommonOut out;
    out.outdir = outdir;
    out.manifest["seed"] = std::to_string(seed);

    if (*validate) {
      const RateModel model = load_model(validate_path);
      std::cout << "K = " << model.max_occupancy() << "\n";
      std::cout << "b_sup = " << format_double(model.b_sup()) << "\n";
      std::cout << "B = " << format_double(model.rate_increment_bound()) << "\n";
      std::cout << "V = " << format_double(model.flux_lipschitz()) << "\n";
      std::cout << "range = " << model.range() << "\n";
      std::cout << "hash = " << hex64(model.hash()) << "\n";
      if (!model.irreducible())
        std::cout << "warning: gcd of |kernel offsets| != 1 (reducible sublattice)\n";
      return 0;
    }

    const RateModel model = load_model_arg(model_arg);
    out.manifest["model_hash"] = hex64(model.hash());

    if (*simulate) {
      const double w = spread_bound(model);
      long long half = sim_halfwidth > 0
                           ? sim_halfwidth
                           : static_cast<long long>(std::ceil(w * sim_duration)) + 256;
      const Boundary boundary =
          sim_boundary == "frozen" ? Boundary::frozen : Boundary::periodic;
      Configuration config;
      const auto colon = sim_init.find(':');
      const std::string kind = sim_init.substr(0, colon);
      const std::string rest = colon == std::string::npos ? "" : sim_init.substr(colon + 1);
      if (kind == "flat") {
        config = flat_quantized_config(std::stod(rest), -half, 2 * half, boundary);
      } else if (kind == "bernoulli") {
        config = bernoulli_product_config(std::stod(rest), -half, 2 * half, boundary,
                                          substream(seed, {0x49}));
      } else if (kind == "riemann") {
        const auto comma = rest.find(',');
        config = make_riemann_config(model, std::stod(rest.substr(0, comma)),
                                     std::stod(rest.substr(comma + 1)), -half, 2 * half,
                                     boundary, substream(seed, {0x49}));
      } else if (kind == "profile") {
        const PiecewiseConstantProfile u0 = load_profile(rest);
        const auto [lo, hi] = u0.support();
        const long long need = static_cast<long long>(
            std::ceil(std::max(std::abs(lo), std::abs(hi)) * sim_n + w * sim_duration));
        half = std::max(half, need + 64);
        config = make_profile_config(model, u0, sim_n, -half, 2 * half, boundary);
      } else if (kind == "snapshot") {
        auto [c, meta] = load_snapshot(rest);
        config = std::move(c);
      } else {
        std::cerr << "unknown --init kind: " << kind << "\n";
        return 2;
      }
      EventStream stream(substream(seed, {0x53}), config.origin(), config.size(), model);
      evolve(config, model, stream, sim_duration);
      const std::string path =
          outdir.empty() ? "snapshot.csv" : (fs::path(outdir) / "snapshot.csv").string();
      save_snapshot(config, SnapshotMeta{sim_n, sim_duration, seed}, path);
      std::cout << "wrote " << path << " (particles: " << config.total_particles() << ")\n";
      out.finish("simulate");
      return 0;
    }

    if (*fluxcmd) {
      FluxTableParams params;
      params.grid_step = flux_grid_step;
      params.mc = flux_mc;
      params.mc.seed = seed;
      params.force_monte_carlo = flux_force_mc;
      const FluxTable table = build_flux_table(model, params);
      std::ostringstream ps;
      ps << "l=" << params.mc.l << " avg_time=" << params.mc.averaging_time
         << " replicates=" << params.mc.replicates << " seed=" << seed;
      const std::string path =
          outdir.empty() ? "flux.csv" : (fs::path(outdir) / "flux.csv").string();
      save_flux_table(table, model.hash(), ps.str(), path);
      out.manifest["flux_hash"] = hex64(table.hash());
      std::cout << "wrote " << path << "\n";
      bool ok = true;
      if (check) {
        if (model.max_occupancy() == 1) {
          for (std::size_t i = 0; i < table.rho.size(); ++i) {
            const double want = analytic_flux(model, table.rho[i]);
            std::ostringstream what;
            what << "G(" << format_double(table.rho[i]) << ") = " << format_double(table.G[i])
                 << " vs " << format_double(want);
            ok = check_report(std::abs(table.G[i] - want) <= tol, what.str()) && ok;
          }
        } else {
          std::cout << "no closed form for K >= 2; --check skipped\n";
        }
      }
      out.finish("flux");
      return ok ? 0 : 1;
    }

    if (*riemann) {
      const FluxTable table = flux_for(model, flux_path, substream(seed, {0xf0}));
      out.manifest["flux_hash"] = hex64(table.hash());
      rspec.Ns = parse_ll_list(r_ns);
      rspec.seed = seed;
      const ConvergenceReport report = run_riemann(model, table, rspec);
      if (!outdir.empty()) report.write_csv((fs::path(outdir) / "report.csv").string());
      for (auto& [N, d] : report.sup_per_N)
        std::cout << "N=" << N << " delta=" << format_double(d) << "\n";
      out.finish("riemann");
      if (check) {
        const long long nmax = report.sup_per_N.back().first;
        std::ostringstream what;
        what << "riemann delta at N=" << nmax << " <= " << tol;
        if (!check_report(report.sup_per_N.back().second <= tol, what.str())) return 1;
      }
      return 0;
    }

    if (*current) {
      const FluxTable table = flux_for(model, flux_path, substream(seed, {0xf0}));
      out.manifest["flux_hash"] = hex64(table.hash());
      cspec.seed = seed;
      cspec.speeds.clear();
      for (auto& s : c_speeds) cspec.speeds.push_back(std::stod(s));
      const CurrentReport report = run_current(model, table, cspec);
      if (!outdir.empty()) report.write_csv((fs::path(outdir) / "report.csv").string());
      bool ok = report.conservation_identity_ok;
      if (!ok) std::cout << "[FAIL] current conservation identity\n";
      for (auto& r : report.rows) {
        std::cout << "v=" << format_double(r.v) << " measured=" << format_double(r.measured)
                  << " predicted=" << format_double(r.predicted) << "\n";
        if (check) {
          std::ostringstream what;
          what << "|measured-predicted| at v=" << format_double(r.v) << " <= " << tol;
          ok = check_report(std::abs(r.measured - r.predicted) <= tol, what.str()) && ok;
        }
      }
      out.finish("current");
      return ok ? 0 : 1;
    }

    if (*cauchy) {
      const FluxTable table = flux_for(model, flux_path, substream(seed, {0xf0}));
      out.manifest["flux_hash"] = hex64(table.hash());
      if (!cauchy_profile.empty()) {
        kspec.u0 = load_profile(cauchy_profile);
      } else if (!cauchy_step.empty()) {
        std::istringstream is(cauchy_step);
        std::string v, lo, hi;
        std::getline(is, v, ':');
        std::getline(is, lo, ':');
        std::getline(is, hi, ':');
        kspec.u0 = indicator_profile(std::stod(v), std::stod(lo), std::stod(hi));
      } else {
        std::cerr << "cauchy needs --profile or --step-datum\n";
        return 2;
      }
      kspec.Ns = parse_ll_list(k_ns);
      kspec.seed = seed;
      const ConvergenceReport report = run_cauchy(model, table, kspec);
      if (!outdir.empty()) {
        report.write_csv((fs::path(outdir) / "report.csv").string());
        // per-(N, t) predicted profiles for plotting
        const FrontTrackingSolution sol =
            front_tracking_solve(snap_to_grid(kspec.u0, table), table, kspec.T);
        for (int j = 0; j <= kspec.time_points; ++j) {
          const double t = kspec.T * static_cast<double>(j) / kspec.time_points;
          std::ostringstream name;
          name << "profile_t" << j << ".csv";
          save_profile(sol.profile(t), (fs::path(outdir) / name.str()).string());
        }
      }
      for (auto& [N, d] : report.sup_per_N)
        std::cout << "N=" << N << " sup_t delta=" << format_double(d) << "\n";
      out.finish("cauchy");
      if (check) {
        std::ostringstream what;
        what << "cauchy sup_t delta at N=" << report.sup_per_N.back().first << " <= " << tol;
        if (!check_report(report.sup_per_N.back().second <= tol, what.str())) return 1;
      }
      return 0;
    }

    if (*stability) {
      auto parse_profile_arg = [](const std::string& arg) {
        if (arg.rfind("step:", 0) == 0) {
          std::istringstream is(arg.substr(5));
          std::string v, lo, hi;
          std::getline(is, v, ':');
          std::getline(is, lo, ':');
          std::getline(is, hi, ':');
          return indicator_profile(std::stod(v), std::stod(lo), std::stod(hi));
        }
        return load_profile(arg);
      };
      sspec.lower = parse_profile_arg(lower_arg);
      sspec.upper = parse_profile_arg(upper_arg);
      sspec.Ns = parse_ll_list(s_ns);
      sspec.seed = seed;
      const StabilityReport report = run_stability(model, sspec);
      if (!outdir.empty()) report.write_csv((fs::path(outdir) / "report.csv").string());
      for (auto& r : report.rows)
        std::cout << "N=" << r.N << " exceedances=" << r.exceedances << "/" << r.replicates
                  << " max_excess=" << format_double(r.max_excess) << "\n";
      out.finish("stability");
      return 0;
    }

    if (*propagation) {
      pspec.seed = seed;
      const PropagationReport report = run_propagation(model, pspec);
      if (!outdir.empty()) report.write_csv((fs::path(outdir) / "report.csv").string());
      if (report.vacuous)
        std::cout << "skipped: interval shorter than 2vt\n";
      else
        std::cout << "speed=" << format_double(report.speed)
                  << " violations=" << report.violations << "/" << report.replicates << "\n";
      out.finish("propagation");
      return 0;
    }

    if (*ergodic) {
      espec.ls = parse_ll_list(e_ls);
      espec.seed = seed;
      espec.f = e_fname == "flux" ? ErgodicFunction::local_flux : ErgodicFunction::occupancy;
      const ErgodicReport report = run_ergodic(model, espec);
      if (!outdir.empty()) report.write_csv((fs::path(outdir) / "report.csv").string());
      for (auto& r : report.rows)
        std::cout << "l=" << r.l << " " << r.kind << " mean=" << format_double(r.mean)
                  << " ci=" << format_double(r.ci) << "\n";
      out.finish("ergodic");
      if (check && espec.f == ErgodicFunction::occupancy) {
        const long long lmax = espec.ls.back();
        bool ok = true;
        for (const char* kind : {"right", "left"}) {
          const ErgodicRow* r = report.find(lmax, kind);
          std::ostringstream what;
          what << kind << " average at l=" << lmax << " within " << tol << " of rho";
          ok = check_report(r && std::abs(r->mean - espec.rho) <= tol, what.str()) && ok;
        }
        return ok ? 0 : 1;
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
