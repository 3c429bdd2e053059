#include <doctest.h>

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "cavtrap/coefficients.hpp"
#include "cavtrap/fields.hpp"
#include "cavtrap/params.hpp"
#include "cavtrap/propagation.hpp"
#include "cavtrap/units.hpp"
#include "correlation_oracle.hpp"
#include "fixtures.hpp"

using namespace cavtrap;
using testsupport::case_a_cache;

namespace {

struct QuantityView {
  const char* name;
  double BlochPoint::* member;
};

constexpr QuantityView quantities[] = {
    {"exp_phi", &BlochPoint::exp_phi}, {"exp_psi", &BlochPoint::exp_psi},
    {"exp_ee", &BlochPoint::exp_ee},   {"chi_gg", &BlochPoint::chi_gg},
    {"chi_gs", &BlochPoint::chi_gs},   {"chi_sg", &BlochPoint::chi_sg},
    {"chi_ss", &BlochPoint::chi_ss},   {"xi_gg", &BlochPoint::xi_gg},
    {"xi_gs", &BlochPoint::xi_gs},     {"xi_sg", &BlochPoint::xi_sg},
    {"xi_ss", &BlochPoint::xi_ss}};

} // namespace

TEST_SUITE("coefficients") {

TEST_CASE("relaxation integrals at the reference point") {
  const PhysicalParams p = scenario_params(Scenario::case_a);
  const ModeGeometry geom(p);
  const Vec3 r{p.well_center(5), p.rho_max(), 0.0};
  const FieldPoint f = geom.fields(r);

  CHECK(f.g == doctest::Approx(110.7949).epsilon(1e-4));
  CHECK(f.s == doctest::Approx(314.1593).epsilon(1e-4));

  const BlochPoint b = DirectBlochProvider(p).at(f.g, f.s);

  CHECK(b.chi_gg == doctest::Approx(+1.215501e-06).epsilon(1e-5));
  CHECK(b.chi_gs == doctest::Approx(-2.027737e-07).epsilon(1e-5));
  CHECK(b.chi_sg == doctest::Approx(-1.994559e-07).epsilon(1e-5));
  CHECK(b.chi_ss == doctest::Approx(+3.341355e-08).epsilon(1e-5));
  CHECK(b.xi_gg == doctest::Approx(+1.786238e-05).epsilon(1e-5));
  CHECK(b.xi_gs == doctest::Approx(-3.245063e-06).epsilon(1e-5));
  CHECK(b.xi_sg == doctest::Approx(-2.766240e-06).epsilon(1e-5));
  CHECK(b.xi_ss == doctest::Approx(+5.409389e-07).epsilon(1e-5));
  CHECK(b.exp_ee == doctest::Approx(4.3779e-04).epsilon(1e-4));

  const LocalCoefficients c = local_coefficients(r, geom, DirectBlochProvider(p));
  CHECK(c.friction_xx == doctest::Approx(7.3389e-04).epsilon(1e-4));
  CHECK(c.vel_diffusion_xx == doctest::Approx(5.1535e-06).epsilon(1e-4));
}

TEST_CASE("resolvent agrees with the time-domain quadrature") {
  struct Probe {
    Scenario sc;
    double g_frac, s_frac;
  };
  const Probe probes[] = {{Scenario::case_a, 0.3565, 1.0},
                          {Scenario::case_a, 0.85, 0.37},
                          {Scenario::case_b, 0.52, 0.88},
                          {Scenario::case_b_lg012, 0.12, 0.61}};

  for (const Probe& pr : probes) {
    const PhysicalParams p = scenario_params(pr.sc);
    const BlochSolver solver(p);
    const double g = pr.g_frac * p.g0;
    const double s = pr.s_frac * p.stark_max();

    const BlochPoint b = solver.solve(g, s);
    const auto set = oracle::integrate_correlations(
        solver.liouvillian(g, s), solver.steady(g, s), solver.ops().phi,
        stark_generator(solver.ops(), p.stark_case), 2.449, rk4_step_limit(p));

    const double chi_scale =
        std::max({std::abs(set.chi_gg), std::abs(set.chi_gs),
                  std::abs(set.chi_sg), std::abs(set.chi_ss)});
    const double xi_scale =
        std::max({std::abs(set.xi_gg), std::abs(set.xi_gs),
                  std::abs(set.xi_sg), std::abs(set.xi_ss)});
    CHECK(std::abs(b.chi_gg - set.chi_gg) < 1e-4 * chi_scale);
    CHECK(std::abs(b.chi_gs - set.chi_gs) < 1e-4 * chi_scale);
    CHECK(std::abs(b.chi_sg - set.chi_sg) < 1e-4 * chi_scale);
    CHECK(std::abs(b.chi_ss - set.chi_ss) < 1e-4 * chi_scale);
    CHECK(std::abs(b.xi_gg - set.xi_gg) < 1e-4 * xi_scale);
    CHECK(std::abs(b.xi_gs - set.xi_gs) < 1e-4 * xi_scale);
    CHECK(std::abs(b.xi_sg - set.xi_sg) < 1e-4 * xi_scale);
    CHECK(std::abs(b.xi_ss - set.xi_ss) < 1e-4 * xi_scale);
  }
}

TEST_CASE("sign structure under coupling reversal") {
  const PhysicalParams p = scenario_params(Scenario::case_a);
  const DirectBlochProvider direct(p);
  const double g = 0.44 * p.g0;
  const double s = 0.71 * p.stark_max();
  const BlochPoint plus = direct.at(g, s);
  const BlochPoint minus = direct.at(-g, s);

  auto close = [](double a, double b) {
    return std::abs(a - b) <= 1e-10 * std::max({std::abs(a), std::abs(b), 1e-9});
  };
  // odd in g
  CHECK(close(minus.exp_phi, -plus.exp_phi));
  CHECK(close(minus.chi_gs, -plus.chi_gs));
  CHECK(close(minus.chi_sg, -plus.chi_sg));
  CHECK(close(minus.xi_gs, -plus.xi_gs));
  CHECK(close(minus.xi_sg, -plus.xi_sg));
  // even in g
  CHECK(close(minus.exp_psi, plus.exp_psi));
  CHECK(close(minus.exp_ee, plus.exp_ee));
  CHECK(close(minus.chi_gg, plus.chi_gg));
  CHECK(close(minus.chi_ss, plus.chi_ss));
  CHECK(close(minus.xi_gg, plus.xi_gg));
  CHECK(close(minus.xi_ss, plus.xi_ss));
}

TEST_CASE("level-symmetric shift leaves the internal state alone") {
  const PhysicalParams p = scenario_params(Scenario::case_b);
  const DirectBlochProvider direct(p);
  const double g = 0.6 * p.g0;
  const BlochPoint a = direct.at(g, 0.2 * p.stark_max());
  const BlochPoint b = direct.at(g, 0.9 * p.stark_max());

  // The shift enters the generator as a multiple of the identity, so it
  // cancels from every commutator. The cancellation happens inside the
  // linear solves, so agreement is to machine precision, not bitwise.
  for (const QuantityView& q : quantities) {
    CAPTURE(q.name);
    const double scale = std::max({std::abs(a.*(q.member)),
                                   std::abs(b.*(q.member)), 1e-4});
    CHECK(std::abs(a.*(q.member) - b.*(q.member)) <= 1e-10 * scale);
  }

  // the shift conjugate is minus one, and the cross and shift correlation
  // integrals vanish up to solver roundoff
  CHECK(a.exp_psi == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(a.chi_gs) < 1e-14);
  CHECK(std::abs(a.chi_sg) < 1e-14);
  CHECK(std::abs(a.chi_ss) < 1e-14);
  CHECK(std::abs(a.xi_gs) < 1e-14);
  CHECK(std::abs(a.xi_sg) < 1e-14);
  CHECK(std::abs(a.xi_ss) < 1e-14);
}

TEST_CASE("excited population ties to the shift conjugate in the split case") {
  const PhysicalParams p = scenario_params(Scenario::case_a);
  const DirectBlochProvider direct(p);
  const BlochPoint b = direct.at(0.5 * p.g0, 0.5 * p.stark_max());
  CHECK(b.exp_psi == doctest::Approx(2.0 * b.exp_ee - 1.0).epsilon(1e-12));
}

TEST_CASE("spline table reproduces direct solves off the nodes") {
  const PhysicalParams p = scenario_params(Scenario::case_a);
  const CoefficientCache& cache = case_a_cache();
  const DirectBlochProvider direct(p);

  std::vector<BlochPoint> exact, interp;
  for (int i = 0; i < 12; ++i) {
    // low-discrepancy probe points, avoiding the node lattice
    const double g = (0.5 + 0.98 * std::fmod(0.6180339887 * (i + 1), 1.0) - 0.49) * p.g0;
    const double s = 0.98 * std::fmod(0.7548776662 * (i + 1), 1.0) * p.stark_max();
    exact.push_back(direct.at(g, s));
    interp.push_back(cache.at(g, s));
  }
  for (const QuantityView& q : quantities) {
    double norm = 0;
    for (const BlochPoint& e : exact) norm = std::max(norm, std::abs(e.*(q.member)));
    for (std::size_t k = 0; k < exact.size(); ++k) {
      CAPTURE(q.name);
      CHECK(std::abs(interp[k].*(q.member) - exact[k].*(q.member)) <=
            1e-3 * norm);
    }
  }
}

TEST_CASE("spline table reproduces its nodes to machine precision") {
  // The basis parameter at a node is zero only up to division rounding, so
  // the lookup matches the stored value to a few ulp of the quantity's
  // scale rather than bitwise.
  const CoefficientCache& cache = case_a_cache();
  const int is[] = {0, 7, 31, 64};
  const int js[] = {0, 13, 40, 64};

  for (const QuantityView& q : quantities) {
    double scale = 0;
    for (int i : is)
      for (int j : js)
        scale = std::max(scale, std::abs(cache.node(i, j).*(q.member)));
    for (int i : is)
      for (int j : js) {
        const BlochPoint stored = cache.node(i, j);
        const BlochPoint looked = cache.at(cache.g_node(i), cache.s_node(j));
        CAPTURE(q.name);
        CAPTURE(i);
        CAPTURE(j);
        CHECK(std::abs(looked.*(q.member) - stored.*(q.member)) <=
              5e-12 * scale);
      }
  }
}

TEST_CASE("table rejects far out-of-domain lookups") {
  const PhysicalParams p = scenario_params(Scenario::case_a);
  const CoefficientCache& cache = case_a_cache();
  CHECK_THROWS_AS((void)cache.at(1.5 * p.g0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)cache.at(0.0, -0.1 * p.stark_max()),
                  std::invalid_argument);
  // roundoff-scale overshoot is clamped, not rejected
  CHECK_NOTHROW((void)cache.at(p.g0 * (1.0 + 1e-12), 0.5 * p.stark_max()));
}

TEST_CASE("axial friction scan signs") {
  const int n_pts = 41;
  auto scan_min = [&](Scenario sc) {
    const PhysicalParams p = scenario_params(sc);
    const ModeGeometry geom(p);
    const DirectBlochProvider direct(p);
    double lowest = 1e300;
    for (int i = 0; i < n_pts; ++i) {
      const double x = (2.0 + 0.5 * i / (n_pts - 1.0)) * p.lambda_S;
      const LocalCoefficients c =
          local_coefficients({x, p.rho_max(), 0.0}, geom, direct);
      lowest = std::min(lowest, c.friction_xx);
      CHECK(c.vel_diffusion_xx >= 0.0);
    }
    return lowest;
  };

  // the split-shift trap has heating stretches along the axis
  CHECK(scan_min(Scenario::case_a) < -1e-4);
  // the level-symmetric trap cools everywhere
  CHECK(scan_min(Scenario::case_b) >= -1e-15);
}

TEST_CASE("local coefficient assembly wiring") {
  const PhysicalParams p = scenario_params(Scenario::case_a);
  const ModeGeometry geom(p);
  const DirectBlochProvider direct(p);
  const Vec3 r{2.07 * p.lambda_S, 0.8 * p.rho_max(), 0.3 * p.rho_max()};

  const FieldPoint f = geom.fields(r);
  const BlochPoint b = direct.at(f.g, f.s);
  const LocalCoefficients c = local_coefficients(r, geom, direct);

  const double hm = p.hbar_over_mass();
  CHECK(c.accel.x == doctest::Approx(-hm * (f.grad_g.x * b.exp_phi +
                                            f.grad_s.x * b.exp_psi))
                         .epsilon(1e-12));
  CHECK(c.accel.y == doctest::Approx(-hm * (f.grad_g.y * b.exp_phi +
                                            f.grad_s.y * b.exp_psi))
                         .epsilon(1e-12));
  const double dxg = f.grad_g.x, dxs = f.grad_s.x;
  CHECK(c.friction_xx ==
        doctest::Approx(hm * (dxg * dxg * b.chi_gg +
                              dxg * dxs * (b.chi_gs + b.chi_sg) +
                              dxs * dxs * b.chi_ss))
            .epsilon(1e-12));
  CHECK(c.vel_diffusion_xx ==
        doctest::Approx(hm * hm *
                        (dxg * dxg * b.xi_gg + dxg * dxs * (b.xi_gs + b.xi_sg) +
                         dxs * dxs * b.xi_ss))
            .epsilon(1e-10));
  CHECK(c.exp_ee == b.exp_ee);
  CHECK(c.g == f.g);
  CHECK(c.s == f.s);
}

TEST_CASE("dragged internal state reproduces the friction integral") {
  const PhysicalParams p = scenario_params(Scenario::case_a);
  const ModeGeometry geom(p);
  const BlochSolver solver(p);
  const OperatorSet& ops = solver.ops();
  const Eigen::MatrixXcd psi_op = stark_generator(ops, p.stark_case);

  // generator split: L(g, s) = L00 + g Lg + s Ls
  const Eigen::MatrixXcd l00 = solver.liouvillian(0, 0).m;
  const Eigen::MatrixXcd lg = solver.liouvillian(1, 0).m - l00;
  const Eigen::MatrixXcd ls = solver.liouvillian(0, 1).m - l00;
  const Eigen::VectorXcd tr_phi = vec(Eigen::MatrixXcd(ops.phi.adjoint()));
  const Eigen::VectorXcd tr_psi = vec(Eigen::MatrixXcd(psi_op.adjoint()));

  const double rho = p.rho_max();
  const double x_lo = p.well_center(5) - 0.25 * p.lambda_S;
  const double window = 0.5 * p.lambda_S;
  const double lead_in = 0.125 * p.lambda_S; // 28 cavity lifetimes at this speed
  const double v = 0.1;
  const double h = 4.0 * rk4_step_limit(p);

  auto accel_x = [&](const Eigen::VectorXcd& eta_v, double x) {
    const FieldPoint f = geom.fields({x, rho, 0.0});
    const double mean_phi = tr_phi.dot(eta_v).real();
    const double mean_psi = tr_psi.dot(eta_v).real();
    return -p.hbar_over_mass() *
           (f.grad_g.x * mean_phi + f.grad_s.x * mean_psi);
  };

  // drag through the window at +/- v; the sum of the two work integrals
  // cancels the static force and doubles the friction work. The step counts
  // divide the lead-in and window exactly, so both directions sample the
  // static force on the same spatial nodes and it drops out node by node.
  const long warm = static_cast<long>(std::ceil(lead_in / (v * h)));
  long meas = static_cast<long>(std::ceil(window / (v * h)));
  if (meas % 2 != 0) ++meas;
  const double h_warm = lead_in / (v * warm);
  const double h_meas = window / (v * meas);

  auto drag_work = [&](double vel) {
    const double start = vel > 0 ? x_lo - lead_in : x_lo + window + lead_in;
    const FieldPoint f0 = geom.fields({start, rho, 0.0});
    Eigen::VectorXcd eta = vec(solver.steady(f0.g, f0.s));
    double x = start;
    auto advance = [&](double hstep) {
      // classical Runge-Kutta with the generator refreshed mid-step
      const double step_x = vel * hstep;
      auto at = [&](double xx) -> Eigen::MatrixXcd {
        const FieldPoint f = geom.fields({xx, rho, 0.0});
        return l00 + f.g * lg + f.s * ls;
      };
      const Eigen::MatrixXcd la = at(x);
      const Eigen::MatrixXcd lm = at(x + 0.5 * step_x);
      const Eigen::MatrixXcd lb = at(x + step_x);
      const Eigen::VectorXcd k1 = la * eta;
      const Eigen::VectorXcd k2 = lm * (eta + 0.5 * hstep * k1);
      const Eigen::VectorXcd k3 = lm * (eta + 0.5 * hstep * k2);
      const Eigen::VectorXcd k4 = lb * (eta + hstep * k3);
      eta += (hstep / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      x += step_x;
    };

    for (long k = 0; k < warm; ++k) advance(h_warm);
    // Simpson in time over the measured window
    double work = 0;
    for (long k = 0; k <= meas; ++k) {
      const double w = (k == 0 || k == meas) ? 1.0 : (k % 2 ? 4.0 : 2.0);
      work += (w / 3.0) * accel_x(eta, x) * vel * h_meas;
      if (k < meas) advance(h_meas);
    }
    return work;
  };

  const double gamma_drag =
      -(drag_work(v) + drag_work(-v)) / (2.0 * v * window);

  // path average of the algebraic friction over the same window
  const DirectBlochProvider direct(p);
  const int panels = 100;
  double gamma_path = 0;
  for (int k = 0; k <= panels; ++k) {
    const double w = (k == 0 || k == panels) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    const double x = x_lo + window * k / panels;
    gamma_path += (w / 3.0) *
                  local_coefficients({x, rho, 0.0}, geom, direct).friction_xx /
                  panels;
  }

  CHECK(gamma_drag / gamma_path == doctest::Approx(1.0).epsilon(0.08));
}

} // TEST_SUITE
