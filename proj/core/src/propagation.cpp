#include "cavtrap/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cavtrap {

double rk4_step_limit(const PhysicalParams& p) {
  const double slowest = std::min(
      {1.0 / p.kappa, 1.0 / p.gamma, 1.0 / std::abs(p.delta_p), 1.0 / p.g0,
       1.0 / p.stark_max()});
  return 0.05 * slowest;
}

Rk4Propagator::Rk4Propagator(const Superoperator& l, double dt,
                             double step_limit)
    : dim_(l.dim), dt_(dt) {
  if (!(dt > 0)) throw std::invalid_argument("propagator dt must be positive");
  if (!(dt <= step_limit * (1.0 + 1e-12)))
    throw std::invalid_argument("propagator dt exceeds the step limit");

  const Eigen::Index n2 = l.m.rows();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n2, n2);
  // Horner form of I + h L + (hL)^2/2 + (hL)^3/6 + (hL)^4/24.
  Eigen::MatrixXcd acc = id + (dt / 4.0) * l.m;
  acc = id + (dt / 3.0) * (l.m * acc);
  acc = id + (dt / 2.0) * (l.m * acc);
  step_ = id + dt * (l.m * acc);
}

void Rk4Propagator::run(
    Eigen::MatrixXcd& block, int steps,
    const std::function<void(int, const Eigen::MatrixXcd&)>& observe) const {
  Eigen::MatrixXcd next(block.rows(), block.cols());
  for (int k = 1; k <= steps; ++k) {
    next.noalias() = step_ * block;
    block.swap(next);
    if (observe) observe(k, block);
  }
}

std::vector<Eigen::MatrixXcd> propagate_series(const Superoperator& l,
                                               const Eigen::MatrixXcd& x,
                                               double t_max, double dt,
                                               double step_limit, int stride) {
  if (stride < 1) throw std::invalid_argument("stride must be at least 1");
  const Rk4Propagator prop(l, dt, step_limit);
  const int steps = static_cast<int>(std::ceil(t_max / dt - 1e-9));

  std::vector<Eigen::MatrixXcd> series;
  series.reserve(static_cast<size_t>(steps / stride) + 2);
  series.push_back(x);

  Eigen::MatrixXcd block = vec(x);
  const int dim = l.dim;
  prop.run(block, steps, [&](int k, const Eigen::MatrixXcd& b) {
    if (k % stride == 0 || k == steps)
      series.push_back(unvec(b.col(0), dim));
  });
  return series;
}

} // namespace cavtrap
