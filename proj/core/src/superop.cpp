#include "cavtrap/superop.hpp"

#include <complex>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace cavtrap {

using std::complex;

Eigen::VectorXcd vec(const Eigen::MatrixXcd& x) {
  return Eigen::Map<const Eigen::VectorXcd>(x.data(), x.size());
}

Eigen::MatrixXcd unvec(const Eigen::VectorXcd& v, int dim) {
  if (v.size() != Eigen::Index(dim) * dim)
    throw std::invalid_argument("unvec: size is not dim^2");
  return Eigen::Map<const Eigen::MatrixXcd>(v.data(), dim, dim);
}

Eigen::MatrixXcd spre(const Eigen::MatrixXcd& a) {
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  return Eigen::kroneckerProduct(id, a);
}

Eigen::MatrixXcd spost(const Eigen::MatrixXcd& b) {
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(b.rows(), b.cols());
  return Eigen::kroneckerProduct(b.transpose(), id);
}

Eigen::RowVectorXcd trace_functional(int dim) {
  Eigen::RowVectorXcd t = Eigen::RowVectorXcd::Zero(Eigen::Index(dim) * dim);
  for (int j = 0; j < dim; ++j) t(Eigen::Index(j) * dim + j) = 1.0;
  return t;
}

Eigen::MatrixXcd build_hamiltonian(const OperatorSet& ops,
                                   const PhysicalParams& p, double g,
                                   double S) {
  Eigen::MatrixXcd h = p.omega_ap() * (ops.sigma_d * ops.sigma) +
                       p.omega_gp() * ops.n_phot + g * ops.phi +
                       p.drive * (ops.ad + ops.a);
  h += S * stark_generator(ops, p.stark_case);
  return h;
}

Superoperator build_liouvillian(const OperatorSet& ops,
                                const Eigen::MatrixXcd& h, double kappa,
                                double gamma) {
  const complex<double> i(0.0, 1.0);
  Superoperator l;
  l.dim = ops.dim;
  l.m = -i * (spre(h) - spost(h));

  auto dissipator = [](const Eigen::MatrixXcd& c) -> Eigen::MatrixXcd {
    const Eigen::MatrixXcd cd_c = c.adjoint() * c;
    const Eigen::MatrixXcd c_conj = c.conjugate();
    return 2.0 * Eigen::kroneckerProduct(c_conj, c) - spre(cd_c) -
           spost(cd_c);
  };
  l.m += kappa * dissipator(ops.a);
  l.m += gamma * dissipator(ops.sigma);
  return l;
}

} // namespace cavtrap
