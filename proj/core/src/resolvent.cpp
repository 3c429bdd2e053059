#include "cavtrap/resolvent.hpp"

#include <complex>
#include <sstream>

#include "cavtrap/errors.hpp"

namespace cavtrap {

using std::complex;

namespace {

Eigen::MatrixXcd bordered(const Eigen::MatrixXcd& l,
                          const Eigen::MatrixXcd& eta, int dim) {
  const Eigen::Index n2 = l.rows();
  Eigen::MatrixXcd b(n2 + 1, n2 + 1);
  b.topLeftCorner(n2, n2) = l;
  b.topRightCorner(n2, 1) = vec(eta);
  b.bottomLeftCorner(1, n2) = trace_functional(dim);
  b(n2, n2) = 0.0;
  return b;
}

} // namespace

Resolvent::Resolvent(const Superoperator& l, const Eigen::MatrixXcd& eta)
    : dim_(l.dim), eta_(eta), l_(l.m), lu_(bordered(l.m, eta, l.dim)) {}

Eigen::VectorXcd Resolvent::solve_traceless(const Eigen::VectorXcd& rhs) const {
  const Eigen::Index n2 = rhs.size();
  Eigen::VectorXcd full(n2 + 1);
  full.head(n2) = rhs;
  full(n2) = 0.0;
  const Eigen::VectorXcd sol = lu_.solve(full);
  const Eigen::VectorXcd y = sol.head(n2);

  // Absolute floor: a right-hand side at machine-noise scale means the
  // correlation source vanishes, and the near-zero solution is correct even
  // though the relative residual is meaningless there.
  const double rhs_norm = rhs.norm();
  const double res = (l_ * y - rhs).norm();
  if (!(res <= 1e-8 * rhs_norm + 1e-13)) {
    std::ostringstream msg;
    msg << "resolvent solve residual " << res << " for rhs norm " << rhs_norm;
    throw NumericalError(msg.str());
  }
  return y;
}

Eigen::MatrixXcd Resolvent::apply(const Eigen::MatrixXcd& x, int order) const {
  if (order != 1 && order != 2)
    throw std::invalid_argument("resolvent order must be 1 or 2");
  const complex<double> tr = x.trace();
  if (!(std::abs(tr) <= 1e-10))
    throw std::invalid_argument("resolvent input must be traceless");

  Eigen::VectorXcd y = solve_traceless(vec(x));
  if (order == 1) return unvec(-y, dim_);
  y = solve_traceless(y);
  return unvec(y, dim_);
}

double Resolvent::checked_real(complex<double> value, const char* what) const {
  if (!(std::abs(value.imag()) <= 1e-6 * (1.0 + std::abs(value.real())))) {
    std::ostringstream msg;
    msg << what << " has imaginary residue " << value.imag() << " vs real part "
        << value.real();
    throw NumericalError(msg.str());
  }
  return value.real();
}

double Resolvent::chi(const Eigen::MatrixXcd& a,
                      const Eigen::MatrixXcd& b) const {
  const Eigen::MatrixXcd x = b * eta_ - eta_ * b;
  const Eigen::MatrixXcd y = apply(x, 2);
  const complex<double> value = complex<double>(0.0, 1.0) * (a * y).trace();
  return checked_real(value, "chi");
}

double Resolvent::xi(const Eigen::MatrixXcd& a,
                     const Eigen::MatrixXcd& b) const {
  const complex<double> b_mean = (b * eta_).trace();
  const Eigen::MatrixXcd x = 0.5 * (b * eta_ + eta_ * b) - b_mean * eta_;
  const Eigen::MatrixXcd y = apply(x, 1);
  const complex<double> value = (a * y).trace();
  return checked_real(value, "xi");
}

Eigen::MatrixXcd resolvent_apply(const Superoperator& l,
                                 const Eigen::MatrixXcd& eta,
                                 const Eigen::MatrixXcd& x, int order) {
  return Resolvent(l, eta).apply(x, order);
}

double correlation_chi(const Superoperator& l, const Eigen::MatrixXcd& eta,
                       const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return Resolvent(l, eta).chi(a, b);
}

double correlation_xi(const Superoperator& l, const Eigen::MatrixXcd& eta,
                      const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return Resolvent(l, eta).xi(a, b);
}

} // namespace cavtrap
