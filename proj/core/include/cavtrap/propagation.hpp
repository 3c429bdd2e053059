#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "cavtrap/params.hpp"
#include "cavtrap/superop.hpp"

namespace cavtrap {

// Largest step accepted by the fixed-step propagator: a twentieth of the
// fastest timescale in the generator.
double rk4_step_limit(const PhysicalParams& p);

// Fixed-step fourth-order Runge-Kutta evolution of operators under a
// time-independent generator. The one-step map is precomputed once, so a
// propagation is a sequence of matrix products on the column-stacked states.
class Rk4Propagator {
 public:
  // Throws std::invalid_argument when dt exceeds step_limit.
  Rk4Propagator(const Superoperator& l, double dt, double step_limit);

  double dt() const { return dt_; }

  // Evolves the columns of `block` (each a column-stacked operator) over
  // `steps` steps, invoking observe(k, block) after step k = 1..steps.
  // observe may be empty.
  void run(Eigen::MatrixXcd& block, int steps,
           const std::function<void(int, const Eigen::MatrixXcd&)>& observe =
               {}) const;

 private:
  int dim_;
  double dt_;
  Eigen::MatrixXcd step_; // one-step RK4 operator
};

// Sampled time series {X(0), X(stride dt), X(2 stride dt), ...} up to t_max.
std::vector<Eigen::MatrixXcd> propagate_series(const Superoperator& l,
                                               const Eigen::MatrixXcd& x,
                                               double t_max, double dt,
                                               double step_limit,
                                               int stride = 1);

} // namespace cavtrap
