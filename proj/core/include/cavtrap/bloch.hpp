#pragma once

#include <Eigen/Dense>

#include "cavtrap/operators.hpp"
#include "cavtrap/params.hpp"
#include "cavtrap/steady_state.hpp"
#include "cavtrap/superop.hpp"

namespace cavtrap {

// Steady-state expectations and relaxation integrals of the internal
// dynamics at one local coupling g and shift S. The chi integrals weight the
// commutator correlations by tau (they build the friction), the xi integrals
// are the plain symmetrized correlation times (they build the diffusion):
//
//   chi_AB = i integral tau <[A(tau), B(0)]>     [us^2]
//   xi_AB  = integral (<{A(tau), B(0)}>/2 - <A><B>)   [us]
//
// with A, B running over the coupling conjugate Phi and the shift conjugate
// Psi (sigma_z or -identity depending on the Stark case).
struct BlochPoint {
  double exp_phi = 0;
  double exp_psi = 0;
  double exp_ee = 0;
  double chi_gg = 0, chi_gs = 0, chi_sg = 0, chi_ss = 0;
  double xi_gg = 0, xi_gs = 0, xi_sg = 0, xi_ss = 0;
};

class BlochSolver {
 public:
  explicit BlochSolver(const PhysicalParams& p);

  // Requires |g| <= g0 and 0 <= S <= stark_max (small tolerance), throws
  // std::invalid_argument outside.
  BlochPoint solve(double g, double s) const;

  Eigen::MatrixXcd steady(double g, double s) const;
  Superoperator liouvillian(double g, double s) const;

  const OperatorSet& ops() const { return ops_; }
  const PhysicalParams& params() const { return p_; }

  // Grid builders may skip the per-node kernel-uniqueness SVD.
  void set_check_uniqueness(bool on) { opt_.check_uniqueness = on; }

 private:
  void check_domain(double g, double s) const;

  PhysicalParams p_;
  OperatorSet ops_;
  Eigen::MatrixXcd psi_;
  SteadyStateOptions opt_;
};

} // namespace cavtrap
