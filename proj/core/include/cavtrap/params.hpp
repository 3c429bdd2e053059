#pragma once

#include <string>

namespace cavtrap {

// How the trap beam shifts the two internal levels: `opposite` raises one and
// lowers the other by S (the trap modulates the transition frequency),
// `equal` lowers both by S (the transition frequency is unaffected and the
// trap acts as a plain conservative potential).
enum class StarkCase { opposite, equal };

// Radial profile of the quantized cavity mode.
enum class CavityModeKind { gaussian, doughnut };

enum class Scenario { case_a, case_b, case_b_lg012, case_b_intense };

struct PhysicalParams {
  double gamma = 0;   // atomic dipole decay rate (half linewidth) [rad/us]
  double kappa = 0;   // cavity field decay rate [rad/us]
  double g0 = 0;      // peak vacuum Rabi coupling [rad/us]
  double drive = 0;   // cavity drive amplitude [rad/us]
  double delta_p = 0; // probe detuning from the common atom/cavity frequency
                      // [rad/us]; negative means the probe is red of both

  double lambda_g = 0; // cavity-mode wavelength [um]
  double lambda_S = 0; // trap-mode wavelength [um]; held at (16/15) lambda_g
  double waist_g = 0;  // cavity-mode waist [um]
  double waist_S = 0;  // trap-mode waist [um]

  double stark_amplitude = 0; // S0 [rad/us per um^(2m)]
  int lg_order = 1;           // doughnut index m of the trap mode
  StarkCase stark_case = StarkCase::equal;
  CavityModeKind cavity_mode = CavityModeKind::gaussian;

  double mass_over_hbar = 0; // M/hbar [us/um^2]
  int n_max = 4;             // photon-number truncation of the field space

  double well_radius = 0; // radial escape bound for trapping statistics [um]

  double hbar_over_mass() const { return 1.0 / mass_over_hbar; }

  // Detunings of atom and cavity above the probe; equal by construction.
  double omega_ap() const { return -delta_p; }
  double omega_gp() const { return -delta_p; }

  double k_g() const;
  double k_S() const;
  // The probe is nearly resonant with the atomic line, so the photon
  // momentum kick uses the cavity-mode wavenumber.
  double k_a() const { return k_g(); }

  double recoil_velocity() const { return hbar_over_mass() * k_a(); }
  double recoil_rate() const; // hbar k_a^2 / 2M [rad/us]

  double rho_max() const;   // radius of peak trap intensity: W_S sqrt(m/2)
  double stark_max() const; // S at (rho_max, trap antinode)

  double empty_cavity_photons() const; // drive^2 / (kappa^2 + delta_p^2)

  // Cavity of length 16 lambda_g spanning 30 half-wavelength trap wells.
  double cavity_length() const { return 16.0 * lambda_g; }
  int well_count() const { return 30; }
  double well_center(int n) const; // x of the n-th trap antinode, n = 1..30

  int hilbert_dim() const { return 2 * (n_max + 1); }

  void validate() const; // throws std::invalid_argument
};

PhysicalParams scenario_params(Scenario s);
Scenario scenario_from_name(const std::string& name);
std::string scenario_name(Scenario s);
const char* stark_case_name(StarkCase c);
const char* cavity_mode_name(CavityModeKind k);

// S0 giving a prescribed peak shift S(rho_max, antinode) for waist W and
// doughnut index m.
double stark_amplitude_for_peak(double s_peak, double waist, int m);

} // namespace cavtrap
