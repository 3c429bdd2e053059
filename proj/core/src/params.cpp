#include "cavtrap/params.hpp"

#include <cmath>
#include <stdexcept>

#include "cavtrap/units.hpp"

namespace cavtrap {

using units::two_pi;

double PhysicalParams::k_g() const { return two_pi / lambda_g; }
double PhysicalParams::k_S() const { return two_pi / lambda_S; }

double PhysicalParams::recoil_rate() const {
  const double k = k_a();
  return 0.5 * hbar_over_mass() * k * k;
}

double PhysicalParams::rho_max() const {
  return waist_S * std::sqrt(0.5 * lg_order);
}

double PhysicalParams::stark_max() const {
  // S(rho, antinode) = S0 rho^(2m) exp(-2 rho^2 / W^2) peaks at rho_max
  // with exp factor e^{-m}.
  return stark_amplitude * std::pow(rho_max(), 2.0 * lg_order) *
         std::exp(-static_cast<double>(lg_order));
}

double PhysicalParams::empty_cavity_photons() const {
  return drive * drive / (kappa * kappa + delta_p * delta_p);
}

double PhysicalParams::well_center(int n) const {
  return (n - 0.5) * lambda_S / 2.0;
}

void PhysicalParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("invalid parameters: ") + what);
  };
  require(gamma > 0, "gamma must be positive");
  require(kappa > 0, "kappa must be positive");
  require(g0 > 0, "g0 must be positive");
  require(drive >= 0, "drive must be non-negative");
  require(lambda_g > 0, "lambda_g must be positive");
  require(waist_g > 0, "waist_g must be positive");
  require(waist_S > 0, "waist_S must be positive");
  require(stark_amplitude >= 0, "stark_amplitude must be non-negative");
  require(lg_order >= 1, "lg_order must be at least 1");
  require(mass_over_hbar > 0, "mass_over_hbar must be positive");
  require(n_max >= 1, "n_max must be at least 1");
  require(std::abs(lambda_S * 15.0 - lambda_g * 16.0) <= 1e-12 * lambda_g,
          "lambda_S must equal (16/15) lambda_g");
  require(well_radius > rho_max(),
          "well_radius must exceed rho_max or every trajectory starts escaped");
}

double stark_amplitude_for_peak(double s_peak, double waist, int m) {
  const double rho = waist * std::sqrt(0.5 * m);
  return s_peak * std::exp(static_cast<double>(m)) / std::pow(rho, 2.0 * m);
}

namespace {

PhysicalParams common_base() {
  PhysicalParams p;
  p.gamma = two_pi * 2.6;
  p.kappa = two_pi * 4.0;
  p.g0 = two_pi * 30.0 * std::sqrt(std::exp(1.0));
  p.lambda_g = 0.8524;
  p.lambda_S = 0.8524 * 16.0 / 15.0;
  p.waist_g = 20.0;
  p.waist_S = 20.0;
  p.lg_order = 1;
  p.cavity_mode = CavityModeKind::gaussian;
  p.mass_over_hbar = units::mass_over_hbar(units::cesium_mass_amu);
  p.n_max = 4;
  p.well_radius = 40.0;
  return p;
}

} // namespace

PhysicalParams scenario_params(Scenario s) {
  PhysicalParams p = common_base();
  switch (s) {
    case Scenario::case_a:
      p.delta_p = -two_pi * 10.0;
      p.drive = 6.77;
      p.stark_case = StarkCase::opposite;
      p.stark_amplitude = stark_amplitude_for_peak(two_pi * 50.0, p.waist_S, 1);
      break;
    case Scenario::case_b:
      p.delta_p = -two_pi * 35.0;
      p.drive = 22.13;
      p.stark_case = StarkCase::equal;
      p.stark_amplitude = stark_amplitude_for_peak(two_pi * 50.0, p.waist_S, 1);
      break;
    case Scenario::case_b_lg012:
      p.delta_p = -two_pi * 35.0;
      p.drive = 22.13;
      p.stark_case = StarkCase::equal;
      p.lg_order = 12;
      // Narrower waist keeps the intensity ring at the same radius as the
      // m = 1 trap; the peak shift is also kept the same.
      p.waist_S = 20.0 / std::sqrt(12.0);
      p.stark_amplitude = stark_amplitude_for_peak(two_pi * 50.0, p.waist_S, 12);
      // The ring sits outside twice the narrow waist, so the escape radius
      // stays at the m = 1 value.
      p.well_radius = 40.0;
      break;
    case Scenario::case_b_intense:
      p.delta_p = -two_pi * 35.0;
      p.drive = 22.13;
      p.stark_case = StarkCase::equal;
      p.stark_amplitude = stark_amplitude_for_peak(two_pi * 400.0, p.waist_S, 1);
      break;
  }
  return p;
}

Scenario scenario_from_name(const std::string& name) {
  if (name == "case-a") return Scenario::case_a;
  if (name == "case-b") return Scenario::case_b;
  if (name == "case-b-LG012") return Scenario::case_b_lg012;
  if (name == "case-b-intense") return Scenario::case_b_intense;
  throw std::invalid_argument("unknown scenario: " + name);
}

std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::case_a: return "case-a";
    case Scenario::case_b: return "case-b";
    case Scenario::case_b_lg012: return "case-b-LG012";
    case Scenario::case_b_intense: return "case-b-intense";
  }
  return "?";
}

const char* stark_case_name(StarkCase c) {
  return c == StarkCase::opposite ? "a" : "b";
}

const char* cavity_mode_name(CavityModeKind k) {
  return k == CavityModeKind::gaussian ? "gaussian" : "doughnut";
}

} // namespace cavtrap
