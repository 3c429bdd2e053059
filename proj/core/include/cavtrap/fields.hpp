#pragma once

#include <cmath>

#include "cavtrap/params.hpp"

namespace cavtrap {

struct Vec3 {
  double x = 0, y = 0, z = 0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x; y += o.y; z += o.z;
    return *this;
  }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
  double rho() const { return std::sqrt(y * y + z * z); }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

struct FieldPoint {
  double g = 0;  // coupling [rad/us]
  Vec3 grad_g;   // [rad/us/um]
  double s = 0;  // trap shift [rad/us]
  Vec3 grad_s;   // [rad/us/um]
};

// Doughnut-beam intensity profile of a standing wave: radial power density
// at radius rho and axial position x for total beam power `power`,
//   I = power * 2^(m+1)/(pi m!) * rho^(2m)/W^(2m+2)
//       * exp(-2 rho^2/W^2) * 2 sin^2(k x).
// The leading factors normalize the transverse integral of the
// travelling-wave profile to `power`.
double lg_intensity(double rho, double x, double power, int m, double waist,
                    double k);

// The two mode functions the atom sees: the quantized cavity mode
//   g(rho, x) = g0 sin(k_g x) R_g(rho)
// with R_g a Gaussian (or doughnut) envelope, and the trap shift
//   S(rho, x) = S0 rho^(2m) sin^2(k_S x) exp(-2 rho^2/W_S^2).
// Gradients are analytic. All methods are pure and depend only on the
// parameter set captured at construction.
class ModeGeometry {
 public:
  explicit ModeGeometry(const PhysicalParams& p);

  double coupling(const Vec3& r) const;
  Vec3 coupling_gradient(const Vec3& r) const;
  double stark(const Vec3& r) const;
  Vec3 stark_gradient(const Vec3& r) const;
  FieldPoint fields(const Vec3& r) const;

  // Offsets of the two position-dependent dressed transitions from the bare
  // common detuning: S +- sqrt(g^2 + S^2) when the trap modulates the
  // transition, +-g when it does not.
  void dressed_detunings(const Vec3& r, double& upper, double& lower) const;

  // First x > 0 maximizing |sin(k_g x)|.
  double coupling_antinode_x() const { return 0.25 * p_.lambda_g; }
  // Center of trap well n (n = 1..30), where sin^2(k_S x) = 1.
  double well_center(int n) const { return p_.well_center(n); }

  const PhysicalParams& params() const { return p_; }

 private:
  PhysicalParams p_;
  double k_g_, k_s_;
  double inv_wg2_, inv_ws2_;
  double doughnut_norm_; // sqrt(2 e)/W_g for the doughnut cavity mode
};

// Scale separations that justify treating the center of mass classically,
// evaluated for a velocity spread dv:
//   localization / spread:            eps1 = v_recoil / dv
//   Doppler width / atomic linewidth: eps2_gamma = k dv / gamma
//   Doppler width / cavity linewidth: eps2_kappa = k dv / kappa
//   recoil rate / linewidths:         recoil_over_*
// `pass` requires the recoil rate at least a hundredfold below both
// linewidths; the eps ratios are reported for inspection.
struct QuasiclassicalReport {
  double velocity_spread = 0;
  double eps1 = 0;
  double eps2_gamma = 0;
  double eps2_kappa = 0;
  double recoil_over_gamma = 0;
  double recoil_over_kappa = 0;
  bool pass = false;
};

QuasiclassicalReport validate_quasiclassical(const PhysicalParams& p,
                                             double velocity_spread);

// Spread minimizing max(eps1, eps2_gamma): sqrt(v_recoil * gamma / k).
double balanced_velocity_spread(const PhysicalParams& p);

} // namespace cavtrap
