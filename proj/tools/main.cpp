#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cavtrap/bloch.hpp"
#include "cavtrap/coefficients.hpp"
#include "cavtrap/config.hpp"
#include "cavtrap/ensemble.hpp"
#include "cavtrap/report.hpp"
#include "cavtrap/stats.hpp"
#include "cavtrap/validate.hpp"

namespace {

using namespace cavtrap;

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Hash of everything that shapes the numbers; the [io] section is excluded
// so moving the output directory does not change the fingerprint.
std::uint64_t run_hash(const RunConfig& cfg) {
  std::string text = cfg.to_doc().serialize();
  const auto io = text.find("[io]");
  if (io != std::string::npos) text.resize(io);
  return fnv1a64(text);
}

void emit(const RunConfig& cfg, const std::string& name, const std::string& content) {
  namespace fs = std::filesystem;
  if (cfg.out_dir.empty() || cfg.out_dir == "-") {
    std::cout << content;
    return;
  }
  fs::create_directories(cfg.out_dir);
  write_file_atomic((fs::path(cfg.out_dir) / name).string(), content);
}

// Owns whichever coefficient source the run selected.
struct ProviderBox {
  std::unique_ptr<CoefficientCache> cache;
  std::unique_ptr<DirectBlochProvider> direct;
  const BlochProvider& get() const {
    return cache ? *cache : static_cast<const BlochProvider&>(*direct);
  }
};

ProviderBox make_provider(const RunConfig& cfg) {
  ProviderBox box;
  if (cfg.use_cache)
    box.cache = std::make_unique<CoefficientCache>(cfg.physics, cfg.cache_n_g,
                                                   cfg.cache_n_s, cfg.workers);
  else
    box.direct = std::make_unique<DirectBlochProvider>(cfg.physics);
  return box;
}

int cmd_steady(const RunConfig& cfg, double g, double s) {
  BlochSolver solver(cfg.physics);
  const BlochPoint b = solver.solve(g, s);
  const Eigen::MatrixXcd rho = solver.steady(g, s);
  const OperatorSet& ops = solver.ops();
  const double photons = (ops.ad * ops.a * rho).trace().real();

  std::ostringstream out;
  out << "scenario = " << cfg.scenario_name << "\n";
  out << "g = " << format_sci(g) << "\n";
  out << "s = " << format_sci(s) << "\n";
  out << "mean_photons = " << format_sci(photons) << "\n";
  out << "exp_ee = " << format_sci(b.exp_ee) << "\n";
  out << "exp_phi = " << format_sci(b.exp_phi) << "\n";
  out << "exp_psi = " << format_sci(b.exp_psi) << "\n";
  out << "chi_gg = " << format_sci(b.chi_gg) << "\n";
  out << "chi_gs = " << format_sci(b.chi_gs) << "\n";
  out << "chi_sg = " << format_sci(b.chi_sg) << "\n";
  out << "chi_ss = " << format_sci(b.chi_ss) << "\n";
  out << "xi_gg = " << format_sci(b.xi_gg) << "\n";
  out << "xi_gs = " << format_sci(b.xi_gs) << "\n";
  out << "xi_sg = " << format_sci(b.xi_sg) << "\n";
  out << "xi_ss = " << format_sci(b.xi_ss) << "\n";
  emit(cfg, "steady.txt", out.str());
  return 0;
}

double resolve_rho(const RunConfig& cfg, const std::string& rho_arg) {
  if (rho_arg == "max") return cfg.physics.rho_max();
  return std::stod(rho_arg);
}

int cmd_coeffs(const RunConfig& cfg, const std::string& rho_arg, int points,
               double x_max_wavelengths) {
  const double rho = resolve_rho(cfg, rho_arg);
  ModeGeometry geom(cfg.physics);
  ProviderBox provider = make_provider(cfg);

  std::ostringstream out;
  out << "x_over_lambda_S,gamma_xx,d_xx_over_m2,phi_abs_over_m,exp_ee\n";
  for (int i = 0; i < points; ++i) {
    const double frac = x_max_wavelengths * i / (points - 1.0);
    const Vec3 r{frac * cfg.physics.lambda_S, rho, 0.0};
    const LocalCoefficients c = local_coefficients(r, geom, provider.get());
    out << format_sci(frac) << ',' << format_sci(c.friction_xx) << ','
        << format_sci(c.vel_diffusion_xx) << ',' << format_sci(c.accel.norm())
        << ',' << format_sci(c.exp_ee) << '\n';
  }
  emit(cfg, "coeffs.csv", out.str());
  return 0;
}

int cmd_dressed(const RunConfig& cfg, const std::string& rho_arg, int points,
                double x_max_wavelengths) {
  const double rho = resolve_rho(cfg, rho_arg);
  ModeGeometry geom(cfg.physics);
  std::ostringstream out;
  out << "x_over_lambda_S,delta_plus,delta_minus\n";
  for (int i = 0; i < points; ++i) {
    const double frac = x_max_wavelengths * i / (points - 1.0);
    const Vec3 r{frac * cfg.physics.lambda_S, rho, 0.0};
    double upper = 0, lower = 0;
    geom.dressed_detunings(r, upper, lower);
    out << format_sci(frac) << ',' << format_sci(upper) << ','
        << format_sci(lower) << '\n';
  }
  emit(cfg, "dressed.csv", out.str());
  return 0;
}

int cmd_simulate(const RunConfig& cfg, std::optional<double> theta) {
  ModeGeometry geom(cfg.physics);
  ProviderBox provider = make_provider(cfg);
  TrajectorySimulator sim(geom, provider.get());

  InitialConditionSpec ic = cfg.initial_conditions();
  if (theta) {
    ic.random_theta = false;
    ic.theta0 = *theta;
  }
  GaussianStream rng(cfg.seed, 0);
  const PhaseState initial = sample_initial(ic, rng);
  const Trajectory traj = sim.simulate(initial, cfg.well(), cfg.sde, rng);

  std::ostringstream out;
  out << "# scenario = " << cfg.scenario_name << "\n";
  out << "# seed = " << cfg.seed << "\n";
  out << "# dt = " << format_sci(cfg.sde.dt) << "\n";
  out << "# run_hash = " << std::hex << run_hash(cfg) << std::dec << "\n";
  out << "# end_reason = " << end_reason_name(traj.end_reason) << "\n";
  out << "# end_time_us = " << format_sci(traj.end_time) << "\n";
  out << "t,x,y,z,vx,vy,vz,rho\n";
  for (const PhaseState& s : traj.samples) {
    out << format_sci(s.t) << ',' << format_sci(s.r.x) << ',' << format_sci(s.r.y)
        << ',' << format_sci(s.r.z) << ',' << format_sci(s.v.x) << ','
        << format_sci(s.v.y) << ',' << format_sci(s.v.z) << ','
        << format_sci(s.r.rho()) << '\n';
  }
  emit(cfg, "trajectory.csv", out.str());
  return 0;
}

int cmd_ensemble(const RunConfig& cfg) {
  ModeGeometry geom(cfg.physics);
  ProviderBox provider = make_provider(cfg);
  TrajectorySimulator sim(geom, provider.get());

  const EnsembleResult result =
      run_ensemble(sim, cfg.initial_conditions(), cfg.well(), cfg.sde,
                   cfg.ensemble_size, cfg.seed, cfg.workers);

  std::vector<double> times;
  std::vector<bool> censored;
  for (const TrajectoryRecord& r : result.records) {
    times.push_back(r.end_time);
    censored.push_back(r.end_reason == EndReason::time_limit);
  }
  const SurvivalEstimate est = survival_fit(times, censored);
  const Classification cls = classify_trapped(result.records);

  ReportOptions opt;
  opt.timestamp = cfg.timestamp;
  const std::string report = ensemble_report(result, est, cls, cfg, opt);
  emit(cfg, "records.csv", records_csv(result));
  emit(cfg, "survival.csv", survival_csv(est));
  emit(cfg, "report.txt", report);
  if (!cfg.out_dir.empty() && cfg.out_dir != "-") std::cout << report;
  return 0;
}

int cmd_validate(const RunConfig& cfg) {
  const auto checks = run_self_checks(cfg.physics);
  std::cout << format_checks(checks);
  return all_passed(checks) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-classical cavity cooling and trapping simulator"};
  app.require_subcommand(1);

  std::string scenario = "case-b";
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool no_timestamp = false;
  bool no_cache = false;
  bool dump_config = false;

  app.add_option("--scenario", scenario,
                 "Parameter preset: case-a, case-b, case-b-LG012, case-b-intense");
  app.add_option("--config", config_path, "Configuration file applied over the preset");
  app.add_option("--out", out_dir, "Output directory; '-' streams to stdout");
  auto* seed_opt = app.add_option("--seed", seed, "Master seed");
  app.add_flag("--no-timestamp", no_timestamp, "Suppress the timestamp header line");
  app.add_flag("--no-cache", no_cache, "Solve coefficients directly at every step");
  app.add_flag("--dump-config", dump_config,
               "Print the effective configuration and exit");

  auto* c_steady =
      app.add_subcommand("steady", "Fixed-position steady-state observables");
  double opt_g = 0, opt_s = 0;
  auto* gopt = c_steady->add_option("--g", opt_g, "Coupling [rad/us]");
  auto* sopt = c_steady->add_option("--s", opt_s, "Trap shift [rad/us]");

  auto* c_coeffs =
      app.add_subcommand("coeffs", "Axial scan of force, friction, diffusion");
  std::string rho_arg = "max";
  int points = 600;
  double x_max = 2.5;
  c_coeffs->add_option("--rho", rho_arg, "Radius [um], or 'max' for the trap ring");
  c_coeffs->add_option("--points", points, "Scan points")->check(CLI::PositiveNumber);
  c_coeffs->add_option("--x-max", x_max, "Scan end in trap wavelengths");

  auto* c_dressed = app.add_subcommand("dressed", "Axial scan of dressed detunings");
  c_dressed->add_option("--rho", rho_arg, "Radius [um], or 'max' for the trap ring");
  c_dressed->add_option("--points", points, "Scan points")->check(CLI::PositiveNumber);
  c_dressed->add_option("--x-max", x_max, "Scan end in trap wavelengths");

  auto* c_sim =
      app.add_subcommand("simulate", "Single stochastic trajectory time series");
  std::string launch;
  double theta = 0;
  double t_max = -1;
  int stride = 0;
  c_sim->add_option("--launch", launch, "random, tangential, or orthogonal");
  auto* theta_opt = c_sim->add_option("--theta", theta, "Fixed launch azimuth [rad]");
  c_sim->add_option("--t-max", t_max, "Time limit [us]");
  c_sim->add_option("--stride", stride, "Steps between samples")
      ->check(CLI::PositiveNumber);

  auto* c_ens = app.add_subcommand("ensemble", "Monte Carlo ensemble with survival fit");
  int n = 0;
  int workers = -1;
  c_ens->add_option("--n", n, "Trajectory count")->check(CLI::PositiveNumber);
  c_ens->add_option("--workers", workers, "Worker threads (0 = hardware)");
  c_ens->add_option("--launch", launch, "random, tangential, or orthogonal");
  c_ens->add_option("--t-max", t_max, "Time limit [us]");

  app.add_subcommand("validate", "Run the physics self-check matrix");

  // global flags remain valid after the subcommand name
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig cfg = config_for_scenario(scenario);
    if (!config_path.empty()) cfg.apply(ConfigDoc::parse_file(config_path));
    if (seed_opt->count() > 0) cfg.seed = seed;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (no_timestamp) cfg.timestamp = false;
    if (no_cache) cfg.use_cache = false;
    if (!launch.empty()) cfg.launch = launch;
    if (t_max > 0) cfg.sde.t_max = t_max;
    if (stride > 0) cfg.sde.sample_stride = stride;
    if (n > 0) cfg.ensemble_size = n;
    if (workers >= 0) cfg.workers = workers;

    if (dump_config) {
      std::cout << cfg.to_doc().serialize();
      return 0;
    }

    const std::string sub = app.get_subcommands().front()->get_name();
    if (sub == "steady") {
      ModeGeometry geom(cfg.physics);
      double g = opt_g, s = opt_s;
      if (gopt->count() == 0)
        g = std::abs(
            geom.coupling({geom.coupling_antinode_x(), cfg.physics.rho_max(), 0.0}));
      if (sopt->count() == 0) s = cfg.physics.stark_max();
      return cmd_steady(cfg, g, s);
    }
    if (sub == "coeffs") return cmd_coeffs(cfg, rho_arg, points, x_max);
    if (sub == "dressed") return cmd_dressed(cfg, rho_arg, points, x_max);
    if (sub == "simulate") {
      std::optional<double> fixed_theta;
      if (theta_opt->count() > 0) fixed_theta = theta;
      return cmd_simulate(cfg, fixed_theta);
    }
    if (sub == "ensemble") return cmd_ensemble(cfg);
    if (sub == "validate") return cmd_validate(cfg);
    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
