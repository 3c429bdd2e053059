#pragma once

#include <Eigen/Dense>

#include "cavtrap/superop.hpp"

namespace cavtrap {

struct SteadyStateOptions {
  // Confirm the kernel of the generator is one-dimensional by checking the
  // ratio of the two smallest singular values. Costs an SVD of the full
  // superoperator matrix; callers doing bulk grid builds may turn it off
  // after establishing uniqueness on the domain.
  bool check_uniqueness = true;
  double min_singular_ratio = 1e6;

  double residual_tol = 1e-10;   // on the infinity norm of L[eta]
  double hermiticity_tol = 1e-12;
  double positivity_tol = 1e-10; // allowed negative eigenvalue magnitude
};

struct SteadyStateDiagnostics {
  double residual = 0;        // ||L[eta]||_inf
  double hermiticity = 0;     // max |eta - eta^dag| before symmetrization
  double min_eigenvalue = 0;
  double singular_ratio = 0;  // second-smallest over smallest, 0 if unchecked
};

// Unique trace-one fixed point of L, found by replacing one row of the
// singular system L x = 0 with the trace constraint. Throws NumericalError
// if the solve fails its residual, Hermiticity, positivity, or kernel
// uniqueness checks. The returned matrix is exactly Hermitian and has unit
// trace.
Eigen::MatrixXcd steady_state(const Superoperator& l,
                              const SteadyStateOptions& opt = {},
                              SteadyStateDiagnostics* diag = nullptr);

} // namespace cavtrap
