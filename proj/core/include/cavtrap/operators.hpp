#pragma once

#include <Eigen/Dense>

#include "cavtrap/params.hpp"

namespace cavtrap {

// Operators on the joint space of one two-level atom and one field mode
// truncated at n_max photons. Basis index = s * (n_max + 1) + n with
// s = 0 the ground level, s = 1 the excited level, n the photon number.
struct OperatorSet {
  int n_max = 0;
  int dim = 0;

  Eigen::MatrixXcd a;        // photon annihilation
  Eigen::MatrixXcd ad;       // photon creation
  Eigen::MatrixXcd n_phot;   // ad a
  Eigen::MatrixXcd sigma;    // atomic lowering |g><e|
  Eigen::MatrixXcd sigma_d;  // atomic raising
  Eigen::MatrixXcd sigma_ee; // excited-level projector
  Eigen::MatrixXcd sigma_z;  // excited minus ground projector
  Eigen::MatrixXcd phi;      // ad sigma + sigma_d a, conjugate to the coupling
  Eigen::MatrixXcd identity;

  int index(int s, int n) const { return s * (n_max + 1) + n; }
};

OperatorSet build_operators(int n_max);

// Operator multiplying the local shift S in the Hamiltonian; also the
// operator whose mean gives the trap part of the mean force. `opposite`
// modulates the transition frequency (sigma_z), `equal` shifts both levels
// down together (minus the identity).
Eigen::MatrixXcd stark_generator(const OperatorSet& ops, StarkCase c);

} // namespace cavtrap
