#include "cavtrap/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace cavtrap {

OperatorSet build_operators(int n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");

  OperatorSet ops;
  ops.n_max = n_max;
  ops.dim = 2 * (n_max + 1);
  const int d = ops.dim;

  ops.a = Eigen::MatrixXcd::Zero(d, d);
  ops.sigma = Eigen::MatrixXcd::Zero(d, d);
  ops.sigma_ee = Eigen::MatrixXcd::Zero(d, d);
  ops.identity = Eigen::MatrixXcd::Identity(d, d);

  for (int s = 0; s < 2; ++s)
    for (int n = 1; n <= n_max; ++n)
      ops.a(ops.index(s, n - 1), ops.index(s, n)) = std::sqrt(double(n));

  for (int n = 0; n <= n_max; ++n) {
    ops.sigma(ops.index(0, n), ops.index(1, n)) = 1.0;
    ops.sigma_ee(ops.index(1, n), ops.index(1, n)) = 1.0;
  }

  ops.ad = ops.a.adjoint();
  ops.n_phot = ops.ad * ops.a;
  ops.sigma_d = ops.sigma.adjoint();
  ops.sigma_z = 2.0 * ops.sigma_ee - ops.identity;
  ops.phi = ops.ad * ops.sigma + ops.sigma_d * ops.a;
  return ops;
}

Eigen::MatrixXcd stark_generator(const OperatorSet& ops, StarkCase c) {
  if (c == StarkCase::opposite) return ops.sigma_z;
  return -ops.identity;
}

} // namespace cavtrap
