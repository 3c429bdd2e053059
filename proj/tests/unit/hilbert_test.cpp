#include <doctest.h>

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "cavtrap/bloch.hpp"
#include "cavtrap/operators.hpp"
#include "cavtrap/params.hpp"
#include "cavtrap/steady_state.hpp"
#include "cavtrap/superop.hpp"
#include "cavtrap/units.hpp"

using namespace cavtrap;

namespace {

double mnorm(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace

TEST_SUITE("hilbert") {

TEST_CASE("operator algebra on the joint space") {
  const OperatorSet ops = build_operators(4);
  CHECK(ops.dim == 10);
  CHECK(ops.index(1, 0) == 5);

  CHECK(mnorm(ops.n_phot - ops.ad * ops.a) < 1e-14);
  CHECK(mnorm(ops.sigma * ops.sigma) < 1e-14);
  CHECK(mnorm(ops.sigma_d * ops.sigma - ops.sigma_ee) < 1e-14);
  CHECK(mnorm(ops.sigma * ops.sigma_d + ops.sigma_d * ops.sigma - ops.identity) <
        1e-14);
  CHECK(mnorm(ops.sigma_z - (2.0 * ops.sigma_ee - ops.identity)) < 1e-14);
  CHECK(mnorm(ops.phi - (ops.ad * ops.sigma + ops.sigma_d * ops.a)) < 1e-14);
  CHECK(mnorm(ops.phi - ops.phi.adjoint()) < 1e-14);

  // ladder commutator away from the truncation edge
  const Eigen::MatrixXcd comm = ops.a * ops.ad - ops.ad * ops.a;
  for (int s = 0; s < 2; ++s)
    for (int n = 0; n + 1 < 5; ++n)
      CHECK(std::abs(comm(ops.index(s, n), ops.index(s, n)) - 1.0) < 1e-14);
}

TEST_CASE("vec unvec and product superoperators") {
  const int d = 4;
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Random(d, d);
  CHECK(mnorm(unvec(vec(x), d) - x) < 1e-15);

  Eigen::MatrixXcd a = Eigen::MatrixXcd::Random(d, d);
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Random(d, d);
  CHECK(mnorm(unvec(spre(a) * vec(x), d) - a * x) < 1e-13);
  CHECK(mnorm(unvec(spost(b) * vec(x), d) - x * b) < 1e-13);
  CHECK(std::abs((trace_functional(d) * vec(x)).value() - x.trace()) < 1e-13);
}

TEST_CASE("hamiltonian is hermitian in both stark cases") {
  for (StarkCase c : {StarkCase::opposite, StarkCase::equal}) {
    PhysicalParams p = scenario_params(Scenario::case_a);
    p.stark_case = c;
    const OperatorSet ops = build_operators(p.n_max);
    const Eigen::MatrixXcd h = build_hamiltonian(ops, p, 73.0, 210.0);
    CHECK(mnorm(h - h.adjoint()) < 1e-12);
  }
}

TEST_CASE("liouvillian preserves the trace") {
  const PhysicalParams p = scenario_params(Scenario::case_b);
  const OperatorSet ops = build_operators(p.n_max);
  const Eigen::MatrixXcd h = build_hamiltonian(ops, p, 150.0, 100.0);
  const Superoperator l = build_liouvillian(ops, h, p.kappa, p.gamma);
  CHECK((trace_functional(ops.dim) * l.m).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("steady state is normalized hermitian positive and unique") {
  const PhysicalParams p = scenario_params(Scenario::case_a);
  const OperatorSet ops = build_operators(p.n_max);
  const Eigen::MatrixXcd h =
      build_hamiltonian(ops, p, 0.6 * p.g0, 0.5 * p.stark_max());
  const Superoperator l = build_liouvillian(ops, h, p.kappa, p.gamma);

  SteadyStateDiagnostics diag;
  const Eigen::MatrixXcd eta = steady_state(l, {}, &diag);

  CHECK(std::abs(eta.trace() - 1.0) < 1e-12);
  CHECK(mnorm(eta - eta.adjoint()) == 0.0);
  CHECK(mnorm(unvec(l.m * vec(eta), ops.dim)) < 1e-10);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(eta);
  CHECK(es.eigenvalues().minCoeff() > -1e-10);
  CHECK(diag.singular_ratio > 1e6);
}

TEST_CASE("empty cavity settles into the driven coherent state") {
  const PhysicalParams p = scenario_params(Scenario::case_a);
  BlochSolver solver(p);
  const Eigen::MatrixXcd eta = solver.steady(0.0, 0.0);
  const OperatorSet& ops = solver.ops();

  const double photons = (ops.ad * ops.a * eta).trace().real();
  const double expect = p.empty_cavity_photons();
  CHECK(std::abs(photons - expect) / expect < 1e-6);

  // the state is the coherent state -iE/(kappa + i omega)
  const std::complex<double> alpha = (ops.a * eta).trace();
  const std::complex<double> predict =
      std::complex<double>(0, -p.drive) /
      std::complex<double>(p.kappa, p.omega_gp());
  CHECK(std::abs(alpha - predict) < 1e-8);
  CHECK(std::abs(std::norm(alpha) - photons) / photons < 1e-6);
}

TEST_CASE("one-excitation spectrum matches the dressed detunings") {
  PhysicalParams p = scenario_params(Scenario::case_a);
  p.drive = 0.0;
  const double g = 0.55 * p.g0;
  const double s = 0.8 * p.stark_max();

  for (StarkCase c : {StarkCase::opposite, StarkCase::equal}) {
    p.stark_case = c;
    const OperatorSet ops = build_operators(p.n_max);
    const Eigen::MatrixXcd h = build_hamiltonian(ops, p, g, s);

    const int ie = ops.index(1, 0);
    const int ig1 = ops.index(0, 1);
    Eigen::Matrix2cd block;
    block << h(ie, ie), h(ie, ig1), h(ig1, ie), h(ig1, ig1);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(block);
    const double ground = h(ops.index(0, 0), ops.index(0, 0)).real();

    // transition offsets above the common detuning
    const double lo = es.eigenvalues()(0) - ground - p.omega_ap();
    const double hi = es.eigenvalues()(1) - ground - p.omega_ap();

    const double split = (c == StarkCase::opposite) ? std::sqrt(g * g + s * s) : g;
    const double center = (c == StarkCase::opposite) ? s : 0.0;
    CHECK(lo == doctest::Approx(center - split).epsilon(1e-12));
    CHECK(hi == doctest::Approx(center + split).epsilon(1e-12));
  }
}

TEST_CASE("photon truncation is converged at the operating point") {
  PhysicalParams p4 = scenario_params(Scenario::case_a);
  PhysicalParams p6 = p4;
  p6.n_max = 6;
  const double g = units::two_pi * 30.0;
  const double s = units::two_pi * 50.0;

  const BlochPoint b4 = BlochSolver(p4).solve(g, s);
  const BlochPoint b6 = BlochSolver(p6).solve(g, s);
  CHECK(std::abs(b4.exp_ee - b6.exp_ee) / b6.exp_ee < 1e-4);
  CHECK(std::abs(b4.chi_gg - b6.chi_gg) / std::abs(b6.chi_gg) < 1e-4);
  CHECK(std::abs(b4.xi_gg - b6.xi_gg) / std::abs(b6.xi_gg) < 1e-4);
}

TEST_CASE("solver rejects out-of-domain inputs") {
  const PhysicalParams p = scenario_params(Scenario::case_a);
  BlochSolver solver(p);
  CHECK_THROWS_AS((void)solver.solve(2.0 * p.g0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)solver.solve(0.0, -5.0), std::invalid_argument);
  CHECK_THROWS_AS((void)solver.solve(0.0, 2.0 * p.stark_max()),
                  std::invalid_argument);
}

} // TEST_SUITE
