#include <doctest.h>

#include <cmath>

#include "cavtrap/ensemble.hpp"
#include "cavtrap/fields.hpp"
#include "cavtrap/params.hpp"
#include "cavtrap/units.hpp"

using namespace cavtrap;

namespace {

// central difference of a scalar field along one axis
template <class F>
double fd(F f, Vec3 r, int axis, double h) {
  Vec3 lo = r, hi = r;
  (axis == 0 ? lo.x : axis == 1 ? lo.y : lo.z) -= h;
  (axis == 0 ? hi.x : axis == 1 ? hi.y : hi.z) += h;
  return (f(hi) - f(lo)) / (2.0 * h);
}

} // namespace

TEST_SUITE("fields") {

TEST_CASE("mode peaks sit at the documented values") {
  for (Scenario sc :
       {Scenario::case_a, Scenario::case_b, Scenario::case_b_lg012}) {
    const PhysicalParams p = scenario_params(sc);
    const ModeGeometry geom(p);
    const double rho = p.rho_max();

    const Vec3 at_antinode{geom.coupling_antinode_x(), rho, 0.0};
    CHECK(std::abs(geom.coupling(at_antinode)) ==
          doctest::Approx(units::two_pi * 30.0).epsilon(1e-12));

    const Vec3 at_well{geom.well_center(5), rho, 0.0};
    CHECK(geom.stark(at_well) ==
          doctest::Approx(units::two_pi * 50.0).epsilon(1e-12));
  }

  const PhysicalParams intense = scenario_params(Scenario::case_b_intense);
  CHECK(intense.stark_max() ==
        doctest::Approx(units::two_pi * 400.0).epsilon(1e-12));
}

TEST_CASE("trap ring radius") {
  const PhysicalParams pb = scenario_params(Scenario::case_b);
  CHECK(pb.rho_max() == doctest::Approx(20.0 / std::sqrt(2.0)).epsilon(1e-14));

  // the narrow-waist order-12 mode puts its ring at the same radius
  const PhysicalParams plg = scenario_params(Scenario::case_b_lg012);
  CHECK(plg.rho_max() == doctest::Approx(pb.rho_max()).epsilon(1e-12));
  CHECK(plg.waist_S == doctest::Approx(20.0 / std::sqrt(12.0)).epsilon(1e-14));
}

TEST_CASE("wavelength ratio and well centers") {
  const PhysicalParams p = scenario_params(Scenario::case_b);
  CHECK(p.lambda_S / p.lambda_g == doctest::Approx(16.0 / 15.0).epsilon(1e-15));
  for (int n = 1; n <= 30; ++n)
    CHECK(p.well_center(n) ==
          doctest::Approx((n - 0.5) * p.lambda_S / 2.0).epsilon(1e-14));

  // couplings at the first eight well centers are pairwise distinct: the
  // two wavelengths are incommensurate over the cavity
  const ModeGeometry geom(p);
  for (int i = 1; i <= 8; ++i)
    for (int j = i + 1; j <= 8; ++j) {
      const double gi = std::abs(geom.coupling({p.well_center(i), 0, 0}));
      const double gj = std::abs(geom.coupling({p.well_center(j), 0, 0}));
      CHECK(std::abs(gi - gj) > 1e-6);
    }
}

TEST_CASE("analytic gradients match finite differences") {
  for (Scenario sc : {Scenario::case_a, Scenario::case_b_lg012}) {
    const PhysicalParams p = scenario_params(sc);
    const ModeGeometry geom(p);
    const Vec3 probes[] = {{0.3, 9.0, -7.0},
                           {1.9, -3.0, 12.5},
                           {2.05, 10.0, 10.0},
                           {p.well_center(5), p.rho_max(), 0.0}};
    const double h = 1e-5;
    for (const Vec3& r : probes) {
      const Vec3 gg = geom.coupling_gradient(r);
      const Vec3 gs = geom.stark_gradient(r);
      auto cf = [&](const Vec3& q) { return geom.coupling(q); };
      auto sf = [&](const Vec3& q) { return geom.stark(q); };
      const double scale_g = p.g0 / p.lambda_g;
      const double scale_s = p.stark_max() / p.lambda_S;
      CHECK(std::abs(gg.x - fd(cf, r, 0, h)) / scale_g < 1e-6);
      CHECK(std::abs(gg.y - fd(cf, r, 1, h)) / scale_g < 1e-6);
      CHECK(std::abs(gg.z - fd(cf, r, 2, h)) / scale_g < 1e-6);
      CHECK(std::abs(gs.x - fd(sf, r, 0, h)) / scale_s < 1e-6);
      CHECK(std::abs(gs.y - fd(sf, r, 1, h)) / scale_s < 1e-6);
      CHECK(std::abs(gs.z - fd(sf, r, 2, h)) / scale_s < 1e-6);
    }
  }
}

TEST_CASE("doughnut intensity profile") {
  const double power = 3.7;
  const double waist = 6.0;
  const double k = units::two_pi / 1.064;
  const double x_antinode = 0.25 * units::two_pi / k;

  for (int m : {1, 12}) {
    // radial maximum at W sqrt(m/2)
    const double peak = waist * std::sqrt(m / 2.0);
    const double at_peak = lg_intensity(peak, x_antinode, power, m, waist, k);
    for (double d : {-0.05, 0.05}) {
      CHECK(lg_intensity(peak * (1.0 + d), x_antinode, power, m, waist, k) <
            at_peak);
    }
    CHECK(lg_intensity(0.0, x_antinode, power, m, waist, k) == 0.0);

    // transverse integral of the standing wave at an antinode is twice the
    // beam power; composite Simpson on [0, 8W]
    const int panels = 4000;
    const double upper = 8.0 * waist;
    const double hstep = upper / panels;
    double integral = 0;
    for (int i = 0; i <= panels; ++i) {
      const double rho = i * hstep;
      const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      integral += w * lg_intensity(rho, x_antinode, power, m, waist, k) *
                  units::two_pi * rho;
    }
    integral *= hstep / 3.0;
    CHECK(integral == doctest::Approx(2.0 * power).epsilon(1e-8));
  }
}

TEST_CASE("launch geometry on the trap ring") {
  const PhysicalParams p = scenario_params(Scenario::case_b);
  GaussianStream rng(9, 0);

  const InitialConditionSpec tang = InitialConditionSpec::tangential(p, 5);
  const PhaseState st = sample_initial(tang, rng);
  CHECK(st.r.y == doctest::Approx(p.rho_max()).epsilon(1e-12));
  CHECK(st.r.z == doctest::Approx(0.0).scale(1.0));
  CHECK(st.v.z == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(st.r.x == doctest::Approx(2.125 * p.lambda_S).epsilon(1e-12));

  const InitialConditionSpec orth = InitialConditionSpec::orthogonal(p, 5);
  const PhaseState so = sample_initial(orth, rng);
  CHECK(so.r.y == doctest::Approx(0.0).scale(1.0));
  CHECK(so.r.z == doctest::Approx(p.rho_max()).epsilon(1e-12));
  CHECK(so.v.z == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("quasiclassical scale separation holds for the presets") {
  for (Scenario sc : {Scenario::case_a, Scenario::case_b}) {
    const PhysicalParams p = scenario_params(sc);
    const QuasiclassicalReport rep =
        validate_quasiclassical(p, balanced_velocity_spread(p));
    CHECK(rep.pass);
    CHECK(rep.eps1 < 0.2);
    CHECK(rep.eps2_gamma < 0.2);
  }
}

} // TEST_SUITE
