#include "cavtrap/validate.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/Dense>

#include "cavtrap/bloch.hpp"
#include "cavtrap/coefficients.hpp"
#include "cavtrap/ensemble.hpp"
#include "cavtrap/fields.hpp"
#include "cavtrap/operators.hpp"
#include "cavtrap/report.hpp"
#include "cavtrap/resolvent.hpp"
#include "cavtrap/rng.hpp"
#include "cavtrap/sde.hpp"
#include "cavtrap/steady_state.hpp"
#include "cavtrap/superop.hpp"

namespace cavtrap {

namespace {

using Eigen::MatrixXcd;

struct Collector {
  std::vector<CheckResult> results;

  void add(const std::string& name, bool passed, const std::string& detail) {
    results.push_back({name, passed, detail});
  }

  void bound(const std::string& name, double value, double limit) {
    std::ostringstream msg;
    msg << format_sci(value) << " (limit " << format_sci(limit) << ")";
    add(name, std::abs(value) <= limit, msg.str());
  }
};

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

void check_operators(Collector& c, const PhysicalParams& p) {
  const OperatorSet ops = build_operators(p.n_max);
  const int n_keep = p.n_max; // commutator rows below the truncation edge

  const MatrixXcd comm = ops.a * ops.ad - ops.ad * ops.a;
  double worst = 0;
  for (int s = 0; s < 2; ++s)
    for (int n = 0; n < n_keep; ++n) {
      const int i = ops.index(s, n);
      worst = std::max(worst, std::abs(comm(i, i) - 1.0));
    }
  c.bound("ladder_commutator", worst, 1e-14);

  const MatrixXcd two_level =
      ops.sigma * ops.sigma_d + ops.sigma_d * ops.sigma - MatrixXcd::Identity(ops.dim, ops.dim);
  c.bound("two_level_completeness", two_level.cwiseAbs().maxCoeff(), 1e-14);
  c.bound("sigma_nilpotent", (ops.sigma * ops.sigma).cwiseAbs().maxCoeff(), 1e-14);
  c.bound("phi_hermitian", (ops.phi - ops.phi.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
  c.bound("sigma_z_involution",
          (ops.sigma_z * ops.sigma_z - MatrixXcd::Identity(ops.dim, ops.dim))
              .cwiseAbs()
              .maxCoeff(),
          1e-14);
}

void check_steady_state(Collector& c, const PhysicalParams& p) {
  const OperatorSet ops = build_operators(p.n_max);
  const double g = 0.6 * p.g0;
  const double s = 0.5 * p.stark_max();
  const Superoperator l =
      build_liouvillian(ops, build_hamiltonian(ops, p, g, s), p.kappa, p.gamma);

  c.bound("trace_preservation", (trace_functional(ops.dim) * l.m).cwiseAbs().maxCoeff(),
          1e-10);

  SteadyStateDiagnostics diag;
  SteadyStateOptions opt;
  const MatrixXcd eta = steady_state(l, opt, &diag);
  c.bound("steady_state_residual", diag.residual, opt.residual_tol);
  c.bound("steady_state_negativity", std::min(0.0, diag.min_eigenvalue),
          opt.positivity_tol);
  c.add("steady_state_unique", diag.singular_ratio >= opt.min_singular_ratio,
        "singular value ratio " + format_sci(diag.singular_ratio));

  // Empty cavity: with the atom decoupled the photon number is that of a
  // driven damped mode, drive^2 / (kappa^2 + delta_p^2).
  const Superoperator l0 =
      build_liouvillian(ops, build_hamiltonian(ops, p, 0.0, 0.0), p.kappa, p.gamma);
  const MatrixXcd eta0 = steady_state(l0, opt);
  const double n_got = (ops.n_phot * eta0).trace().real();
  c.bound("empty_cavity_photons", rel_err(n_got, p.empty_cavity_photons()), 1e-6);

  // L applied after its own inverse must reproduce a traceless input.
  Resolvent res(l, eta);
  GaussianStream rng(17, 0);
  MatrixXcd x = MatrixXcd::Zero(ops.dim, ops.dim);
  for (int i = 0; i < ops.dim; ++i)
    for (int j = 0; j < ops.dim; ++j) x(i, j) = {rng.normal(), rng.normal()};
  x = 0.5 * (x + MatrixXcd(x.adjoint()).eval());
  x -= (x.trace() / static_cast<double>(ops.dim)) * MatrixXcd::Identity(ops.dim, ops.dim);
  const MatrixXcd inv = -res.apply(x, 1); // order 1 returns -L^{-1} x
  const MatrixXcd back = unvec(l.m * vec(inv), ops.dim);
  c.bound("resolvent_right_inverse",
          (back - x).cwiseAbs().maxCoeff() / x.cwiseAbs().maxCoeff(), 1e-8);
}

void check_truncation(Collector& c, const PhysicalParams& p) {
  PhysicalParams larger = p;
  larger.n_max = p.n_max + 1;
  const double g = p.g0;
  const double s = p.stark_max();

  auto photons = [&](const PhysicalParams& q) {
    const OperatorSet ops = build_operators(q.n_max);
    const Superoperator l =
        build_liouvillian(ops, build_hamiltonian(ops, q, g, s), q.kappa, q.gamma);
    const MatrixXcd eta = steady_state(l, SteadyStateOptions{});
    return (ops.n_phot * eta).trace().real();
  };
  c.bound("fock_truncation_margin", photons(p) - photons(larger), 1e-4);
}

void check_fields(Collector& c, const PhysicalParams& p) {
  const ModeGeometry geom(p);
  const double x_anti = geom.coupling_antinode_x();
  const double rho_max = p.rho_max();

  // Coupling peak: on axis for a Gaussian mode, on the intensity ring for a
  // doughnut mode.
  const double rho_peak = p.cavity_mode == CavityModeKind::gaussian ? 0.0 : rho_max;
  const double g_peak = geom.coupling({x_anti, rho_peak, 0});
  c.bound("coupling_peak", rel_err(g_peak, p.g0), 1e-12);

  const double s_peak = geom.stark({geom.well_center(1), 0, rho_max});
  c.bound("trap_peak", rel_err(s_peak, p.stark_max()), 1e-12);
  c.bound("wavelength_ratio", rel_err(p.lambda_S / p.lambda_g, 16.0 / 15.0), 1e-12);

  // Analytic gradients against central differences.
  const Vec3 pts[] = {{1.3, 4.0, -3.0}, {0.2, -8.0, 2.5}, {2.1, 0.5, 0.4}};
  const double h = 1e-5;
  double worst = 0;
  for (const Vec3& r : pts) {
    const FieldPoint f = geom.fields(r);
    const Vec3 axes[] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    const double got_g[] = {f.grad_g.x, f.grad_g.y, f.grad_g.z};
    const double got_s[] = {f.grad_s.x, f.grad_s.y, f.grad_s.z};
    for (int k = 0; k < 3; ++k) {
      const Vec3 dr = axes[k] * h;
      const double fd_g = (geom.coupling(r + dr) - geom.coupling(r - dr)) / (2 * h);
      const double fd_s = (geom.stark(r + dr) - geom.stark(r - dr)) / (2 * h);
      worst = std::max(worst, std::abs(fd_g - got_g[k]) / p.g0 * p.waist_g);
      worst = std::max(worst, std::abs(fd_s - got_s[k]) / p.stark_max() * p.waist_S);
    }
  }
  c.bound("field_gradients", worst, 1e-6);

  const QuasiclassicalReport q = validate_quasiclassical(p, balanced_velocity_spread(p));
  std::ostringstream msg;
  msg << "recoil/gamma " << format_sci(q.recoil_over_gamma) << ", recoil/kappa "
      << format_sci(q.recoil_over_kappa);
  c.add("quasiclassical_regime", q.pass, msg.str());
}

void check_symmetries(Collector& c, const PhysicalParams& p) {
  const BlochSolver solver(p);
  const double g = 0.45 * p.g0;
  const double s = 0.7 * p.stark_max();
  const BlochPoint plus = solver.solve(g, s);
  const BlochPoint minus = solver.solve(-g, s);

  const double scale_chi = std::max({std::abs(plus.chi_gg), std::abs(plus.chi_ss), 1e-12});
  double worst = std::max({std::abs(plus.exp_phi + minus.exp_phi),
                           std::abs(plus.exp_psi - minus.exp_psi),
                           std::abs(plus.exp_ee - minus.exp_ee)});
  worst = std::max(worst, std::abs(plus.chi_gg - minus.chi_gg) / scale_chi);
  worst = std::max(worst, std::abs(plus.chi_ss - minus.chi_ss) / scale_chi);
  worst = std::max(worst, std::abs(plus.chi_gs + minus.chi_gs) / scale_chi);
  worst = std::max(worst, std::abs(plus.chi_sg + minus.chi_sg) / scale_chi);
  c.bound("coupling_sign_symmetry", worst, 1e-8);

  if (p.stark_case == StarkCase::equal) {
    // A trap acting identically on both internal states shifts only the
    // overall phase: every shift-related response must vanish identically.
    const double cross = std::max({std::abs(plus.chi_gs), std::abs(plus.chi_sg),
                                   std::abs(plus.chi_ss), std::abs(plus.xi_gs),
                                   std::abs(plus.xi_sg), std::abs(plus.xi_ss),
                                   std::abs(plus.exp_psi + 1.0)});
    c.bound("uniform_shift_decoupling", cross, 1e-12);
  }
}

void check_sde(Collector& c, const PhysicalParams& p, const BlochProvider& bloch) {
  const ModeGeometry geom(p);
  const TrajectorySimulator sim(geom, bloch);
  const WellSpec well = WellSpec::around_well(p, 5);
  const InitialConditionSpec ic = InitialConditionSpec::standard(p, 5);

  SdeSettings set;
  set.t_max = 50.0;
  set.sample_stride = 50;

  auto run = [&](std::uint64_t seed, std::uint64_t stream) {
    GaussianStream rng(seed, stream);
    const PhaseState s0 = sample_initial(ic, rng);
    return sim.simulate(s0, well, set, rng);
  };
  const Trajectory t1 = run(42, 0);
  const Trajectory t2 = run(42, 0);
  const Trajectory t3 = run(42, 1);

  bool identical = t1.samples.size() == t2.samples.size();
  if (identical)
    for (std::size_t i = 0; i < t1.samples.size(); ++i) {
      const PhaseState &a = t1.samples[i], &b = t2.samples[i];
      identical = identical && a.r.x == b.r.x && a.r.y == b.r.y && a.r.z == b.r.z &&
                  a.v.x == b.v.x && a.v.y == b.v.y && a.v.z == b.v.z;
    }
  c.add("sde_reproducible", identical,
        identical ? "same stream gives identical samples" : "same-seed runs diverged");

  const PhaseState &a = t1.samples.back(), &b = t3.samples.back();
  const bool differs = a.r.x != b.r.x || a.r.y != b.r.y || a.r.z != b.r.z;
  c.add("sde_streams_independent", differs,
        differs ? "distinct streams give distinct paths" : "streams collided");
}

void check_interpolation(Collector& c, const PhysicalParams& p,
                         const CoefficientCache& cache) {
  const DirectBlochProvider direct(p);

  double worst = 0;
  const double gs[] = {0.137, 0.52, 0.861};
  const double ss[] = {0.093, 0.44, 0.905};
  for (double fg : gs)
    for (double fs : ss) {
      const double g = fg * p.g0;
      const double s = fs * p.stark_max();
      const BlochPoint got = cache.at(g, s);
      const BlochPoint want = direct.at(g, s);
      const double scale =
          std::max({std::abs(want.chi_gg), std::abs(want.xi_gg), 1e-12});
      worst = std::max(worst, std::abs(got.chi_gg - want.chi_gg) / scale);
      worst = std::max(worst, std::abs(got.xi_gg - want.xi_gg) / scale);
      worst = std::max(worst, std::abs(got.exp_phi - want.exp_phi));
      worst = std::max(worst, std::abs(got.exp_ee - want.exp_ee));
    }
  c.bound("coefficient_interpolation", worst, 1e-3);

  // Node values reproduce exactly and the odd quantities flip with g.
  const BlochPoint nd = cache.node(16, 8);
  const BlochPoint at_node = cache.at(cache.g_node(16), cache.s_node(8));
  c.bound("interpolation_node_exact", std::abs(nd.chi_gg - at_node.chi_gg),
          1e-15 + 1e-12 * std::abs(nd.chi_gg));
  const BlochPoint pos = cache.at(0.3 * p.g0, 0.2 * p.stark_max());
  const BlochPoint neg = cache.at(-0.3 * p.g0, 0.2 * p.stark_max());
  c.bound("interpolation_parity",
          std::abs(pos.exp_phi + neg.exp_phi) + std::abs(pos.chi_gg - neg.chi_gg) +
              std::abs(pos.chi_gs + neg.chi_gs),
          1e-14);
}

} // namespace

std::vector<CheckResult> run_self_checks(const PhysicalParams& p) {
  Collector c;
  check_operators(c, p);
  check_steady_state(c, p);
  check_truncation(c, p);
  check_fields(c, p);
  check_symmetries(c, p);
  const CoefficientCache cache(p, 65, 65);
  check_sde(c, p, cache);
  check_interpolation(c, p, cache);
  return c.results;
}

std::string format_checks(const std::vector<CheckResult>& checks) {
  std::ostringstream out;
  for (const CheckResult& r : checks)
    out << (r.passed ? "PASS" : "FAIL") << "  " << r.name << ": " << r.detail << "\n";
  return out.str();
}

bool all_passed(const std::vector<CheckResult>& checks) {
  for (const CheckResult& r : checks)
    if (!r.passed) return false;
  return true;
}

} // namespace cavtrap
