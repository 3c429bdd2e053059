#pragma once

#include <Eigen/Dense>

#include "cavtrap/operators.hpp"
#include "cavtrap/params.hpp"

namespace cavtrap {

// Linear maps on density operators, represented as dense dim^2 x dim^2
// matrices acting on column-stacked operators: vec(A rho B) =
// (B^T kron A) vec(rho). Column stacking matches Eigen's column-major
// storage, so vec/unvec are plain reshapes.
struct Superoperator {
  Eigen::MatrixXcd m;
  int dim = 0;
};

Eigen::VectorXcd vec(const Eigen::MatrixXcd& x);
Eigen::MatrixXcd unvec(const Eigen::VectorXcd& v, int dim);

Eigen::MatrixXcd spre(const Eigen::MatrixXcd& a);  // rho -> a rho
Eigen::MatrixXcd spost(const Eigen::MatrixXcd& b); // rho -> rho b

// Row functional r with r * vec(x) = tr(x).
Eigen::RowVectorXcd trace_functional(int dim);

// H/hbar at local coupling g and shift S, in the frame rotating at the
// probe frequency:
//   omega_ap sigma_d sigma + omega_gp ad a + S * stark_generator
//   + g (ad sigma + sigma_d a) + drive (ad + a)
Eigen::MatrixXcd build_hamiltonian(const OperatorSet& ops,
                                   const PhysicalParams& p, double g,
                                   double S);

// Generator of the dissipative evolution,
//   L rho = -i [H, rho]
//           + kappa (2 a rho ad - ad a rho - rho ad a)
//           + gamma (2 sigma rho sigma_d - sigma_d sigma rho - rho sigma_d sigma)
// with the photon-recoil refeeding term already integrated over emission
// directions at fixed position, which is what folds the full gamma back into
// the sigma channel above.
Superoperator build_liouvillian(const OperatorSet& ops,
                                const Eigen::MatrixXcd& h, double kappa,
                                double gamma);

} // namespace cavtrap
