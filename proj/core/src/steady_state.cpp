#include "cavtrap/steady_state.hpp"

#include <limits>
#include <sstream>

#include "cavtrap/errors.hpp"

namespace cavtrap {

Eigen::MatrixXcd steady_state(const Superoperator& l,
                              const SteadyStateOptions& opt,
                              SteadyStateDiagnostics* diag) {
  const int dim = l.dim;
  const Eigen::Index n2 = l.m.rows();

  Eigen::MatrixXcd a = l.m;
  a.row(0) = trace_functional(dim);
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n2);
  b(0) = 1.0;

  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  Eigen::VectorXcd x = lu.solve(b);

  Eigen::MatrixXcd eta = unvec(x, dim);
  const double trace_re = eta.trace().real();
  eta /= trace_re;

  SteadyStateDiagnostics d;
  d.residual = (l.m * vec(eta)).cwiseAbs().maxCoeff();
  d.hermiticity = (eta - eta.adjoint()).cwiseAbs().maxCoeff();

  std::ostringstream problems;
  if (!(d.residual < opt.residual_tol))
    problems << " residual " << d.residual << " exceeds " << opt.residual_tol
             << ";";
  if (!(d.hermiticity < opt.hermiticity_tol))
    problems << " non-Hermitian by " << d.hermiticity << ";";

  eta = 0.5 * (eta + eta.adjoint().eval());

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      eta, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = es.eigenvalues().minCoeff();
  if (!(d.min_eigenvalue > -opt.positivity_tol))
    problems << " negative eigenvalue " << d.min_eigenvalue << ";";

  if (opt.check_uniqueness) {
    const Eigen::BDCSVD<Eigen::MatrixXcd> svd(l.m);
    const auto& sv = svd.singularValues();
    const double smallest = sv(sv.size() - 1);
    const double second = sv(sv.size() - 2);
    d.singular_ratio = smallest > 0 ? second / smallest
                                    : std::numeric_limits<double>::infinity();
    if (!(d.singular_ratio > opt.min_singular_ratio))
      problems << " kernel not one-dimensional (singular ratio "
               << d.singular_ratio << ");";
  }

  if (diag) *diag = d;
  const std::string msg = problems.str();
  if (!msg.empty()) throw NumericalError("steady_state:" + msg);
  return eta;
}

} // namespace cavtrap
