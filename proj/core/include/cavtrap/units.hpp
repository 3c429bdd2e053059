#pragma once

// Unit system used throughout: lengths in micrometers, times in microseconds,
// angular rates in rad/us, velocities in um/us (numerically equal to m/s).
// Planck's constant never appears on its own; only the ratio hbar/M with
// dimension um^2/us enters the equations of motion.

namespace cavtrap::units {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

inline constexpr double hbar_si = 1.054571817e-34;               // J s
inline constexpr double atomic_mass_unit_si = 1.66053906892e-27; // kg

// 1 m^2/s = 1e6 um^2/us
inline constexpr double m2_per_s_in_um2_per_us = 1e6;

inline constexpr double cesium_mass_amu = 132.905;

constexpr double hbar_over_mass(double mass_amu) {
  return hbar_si / (mass_amu * atomic_mass_unit_si) * m2_per_s_in_um2_per_us;
}

constexpr double mass_over_hbar(double mass_amu) {
  return 1.0 / hbar_over_mass(mass_amu);
}

} // namespace cavtrap::units
