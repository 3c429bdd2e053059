#pragma once

#include <array>
#include <vector>

#include "cavtrap/bloch.hpp"
#include "cavtrap/fields.hpp"
#include "cavtrap/params.hpp"

namespace cavtrap {

// Source of internal-state data for the slow center-of-mass equations.
// Implementations must be safe for concurrent lookups.
class BlochProvider {
 public:
  virtual ~BlochProvider() = default;
  virtual BlochPoint at(double g, double s) const = 0;
};

class DirectBlochProvider final : public BlochProvider {
 public:
  explicit DirectBlochProvider(const PhysicalParams& p) : solver_(p) {}
  BlochPoint at(double g, double s) const override { return solver_.solve(g, s); }
  const BlochSolver& solver() const { return solver_; }

 private:
  BlochSolver solver_;
};

// Bicubic-spline table of Bloch data over (g, S) in [0, g0] x [0, S_max],
// extended to negative g through the sign flip of the quantities odd under
// g -> -g. Inputs may overshoot the domain by a relative 1e-9 (field
// evaluation roundoff) and are clamped; anything further out throws
// std::invalid_argument.
class CoefficientCache final : public BlochProvider {
 public:
  static constexpr int n_quantities = 11;
  using Node = std::array<double, n_quantities>;

  CoefficientCache(const PhysicalParams& p, int n_g = 65, int n_s = 65,
                   int n_threads = 0);

  BlochPoint at(double g, double s) const override;

  int n_g() const { return n_g_; }
  int n_s() const { return n_s_; }
  double g_node(int i) const { return i * hg_; }
  double s_node(int j) const { return j * hs_; }
  BlochPoint node(int i, int j) const;

  const PhysicalParams& params() const { return p_; }

 private:
  int idx(int i, int j) const { return i * n_s_ + j; }
  void build(int n_threads);

  PhysicalParams p_;
  int n_g_, n_s_;
  double hg_, hs_;
  double g_max_, s_max_;
  // values and spline second derivatives along g, S, and both
  std::vector<Node> f_, mg_, ms_, mgs_;
};

// Mean light force over mass: -(hbar/M)(grad g <Phi> + grad S <Psi>).
Vec3 assemble_accel(const FieldPoint& f, const BlochPoint& b,
                    const PhysicalParams& p);

// Axial friction rate: (hbar/M) of the gradient quadratic form in the chi
// integrals. Positive values damp v_x.
double assemble_friction_xx(const FieldPoint& f, const BlochPoint& b,
                            const PhysicalParams& p);

// Axial dipole-fluctuation momentum diffusion over M^2, the same quadratic
// form in the xi integrals times (hbar/M)^2. Clamped at zero; a negative
// value beyond roundoff scale throws NumericalError.
double assemble_vel_diffusion_xx(const FieldPoint& f, const BlochPoint& b,
                                 const PhysicalParams& p);

struct LocalCoefficients {
  Vec3 accel;                 // [um/us^2]
  double friction_xx = 0;     // [1/us]
  double vel_diffusion_xx = 0; // dipole part [um^2/us^3]
  double exp_ee = 0;          // excited-level population, feeds recoil noise
  double g = 0;               // local coupling [rad/us]
  double s = 0;               // local shift [rad/us]
};

LocalCoefficients local_coefficients(const Vec3& r, const ModeGeometry& geom,
                                     const BlochProvider& bloch);

} // namespace cavtrap
