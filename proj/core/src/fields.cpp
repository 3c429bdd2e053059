#include "cavtrap/fields.hpp"

#include <stdexcept>

#include "cavtrap/units.hpp"

namespace cavtrap {

namespace {

double ipow(double base, int n) {
  double out = 1.0;
  for (int i = 0; i < n; ++i) out *= base;
  return out;
}

} // namespace

double lg_intensity(double rho, double x, double power, int m, double waist,
                    double k) {
  if (m < 0) throw std::invalid_argument("lg_intensity: m must be >= 0");
  double mfact = 1.0;
  for (int i = 2; i <= m; ++i) mfact *= i;
  const double w2 = waist * waist;
  const double u = rho * rho / w2;
  const double radial = std::pow(2.0, m + 1) / (units::pi * mfact) *
                        ipow(u, m) / w2 * std::exp(-2.0 * u);
  const double sx = std::sin(k * x);
  return power * radial * 2.0 * sx * sx;
}

ModeGeometry::ModeGeometry(const PhysicalParams& p) : p_(p) {
  p_.validate();
  k_g_ = p_.k_g();
  k_s_ = p_.k_S();
  inv_wg2_ = 1.0 / (p_.waist_g * p_.waist_g);
  inv_ws2_ = 1.0 / (p_.waist_S * p_.waist_S);
  doughnut_norm_ = std::sqrt(2.0 * std::exp(1.0)) / p_.waist_g;
}

double ModeGeometry::coupling(const Vec3& r) const {
  const double u = (r.y * r.y + r.z * r.z) * inv_wg2_;
  const double axial = std::sin(k_g_ * r.x);
  if (p_.cavity_mode == CavityModeKind::gaussian)
    return p_.g0 * axial * std::exp(-u);
  return p_.g0 * axial * doughnut_norm_ * r.rho() * std::exp(-u);
}

Vec3 ModeGeometry::coupling_gradient(const Vec3& r) const {
  const double rho2 = r.y * r.y + r.z * r.z;
  const double u = rho2 * inv_wg2_;
  const double sx = std::sin(k_g_ * r.x);
  const double cx = std::cos(k_g_ * r.x);
  if (p_.cavity_mode == CavityModeKind::gaussian) {
    const double env = p_.g0 * std::exp(-u);
    const double radial = -2.0 * inv_wg2_ * env * sx;
    return {p_.g0 * k_g_ * cx * std::exp(-u), radial * r.y, radial * r.z};
  }
  // d/dy [rho exp(-u)] = (y/rho)(1 - 2 rho^2/W^2) exp(-u); finite but
  // direction-discontinuous at rho = 0, where the profile itself vanishes.
  const double rho = std::sqrt(rho2);
  const double env = p_.g0 * doughnut_norm_ * std::exp(-u);
  const double ax = env * rho * k_g_ * cx;
  if (rho == 0.0) return {0.0, env * sx, 0.0};
  const double radial = env * sx * (1.0 - 2.0 * u) / rho;
  return {ax, radial * r.y, radial * r.z};
}

double ModeGeometry::stark(const Vec3& r) const {
  const double rho2 = r.y * r.y + r.z * r.z;
  const double sx = std::sin(k_s_ * r.x);
  return p_.stark_amplitude * ipow(rho2, p_.lg_order) * sx * sx *
         std::exp(-2.0 * rho2 * inv_ws2_);
}

Vec3 ModeGeometry::stark_gradient(const Vec3& r) const {
  const double rho2 = r.y * r.y + r.z * r.z;
  const int m = p_.lg_order;
  const double sx = std::sin(k_s_ * r.x);
  const double cx = std::cos(k_s_ * r.x);
  const double env = std::exp(-2.0 * rho2 * inv_ws2_);

  const double um = ipow(rho2, m);
  const double axial = p_.stark_amplitude * um * env * 2.0 * sx * cx * k_s_;

  // d/d(rho^2) of rho^(2m) exp(-2 rho^2/W^2), finite at rho = 0 for m >= 1.
  const double um1 = m >= 1 ? ipow(rho2, m - 1) : 0.0;
  const double dradial =
      p_.stark_amplitude * sx * sx * env * (m * um1 - 2.0 * um * inv_ws2_);
  return {axial, 2.0 * r.y * dradial, 2.0 * r.z * dradial};
}

FieldPoint ModeGeometry::fields(const Vec3& r) const {
  FieldPoint f;
  f.g = coupling(r);
  f.grad_g = coupling_gradient(r);
  f.s = stark(r);
  f.grad_s = stark_gradient(r);
  return f;
}

void ModeGeometry::dressed_detunings(const Vec3& r, double& upper,
                                     double& lower) const {
  const double g = coupling(r);
  if (p_.stark_case == StarkCase::opposite) {
    const double s = stark(r);
    const double split = std::sqrt(g * g + s * s);
    upper = s + split;
    lower = s - split;
    return;
  }
  upper = g;
  lower = -g;
}

QuasiclassicalReport validate_quasiclassical(const PhysicalParams& p,
                                             double velocity_spread) {
  if (!(velocity_spread > 0))
    throw std::invalid_argument("velocity_spread must be positive");
  QuasiclassicalReport rep;
  rep.velocity_spread = velocity_spread;
  rep.eps1 = p.recoil_velocity() / velocity_spread;
  rep.eps2_gamma = p.k_a() * velocity_spread / p.gamma;
  rep.eps2_kappa = p.k_a() * velocity_spread / p.kappa;
  rep.recoil_over_gamma = p.recoil_rate() / p.gamma;
  rep.recoil_over_kappa = p.recoil_rate() / p.kappa;
  rep.pass = rep.recoil_over_gamma < 0.01 && rep.recoil_over_kappa < 0.01;
  return rep;
}

double balanced_velocity_spread(const PhysicalParams& p) {
  return std::sqrt(p.recoil_velocity() * p.gamma / p.k_a());
}

} // namespace cavtrap
