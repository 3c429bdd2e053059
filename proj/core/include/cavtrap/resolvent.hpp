#pragma once

#include <Eigen/Dense>

#include "cavtrap/superop.hpp"

namespace cavtrap {

// Integrals of the relaxation kernel against traceless operators. For a
// traceless X the propagated operator e^{L tau} X decays, and
//
//   integral_0^inf e^{L tau} X dtau       = -L^{-1} X       (order 1)
//   integral_0^inf tau e^{L tau} X dtau   =  L^{-2} X       (order 2)
//
// where L^{-1} means the inverse restricted to the traceless subspace. The
// restriction is realized by one LU factorization of the generator bordered
// with the trace functional and the steady state, reused across solves.
class Resolvent {
 public:
  Resolvent(const Superoperator& l, const Eigen::MatrixXcd& eta);

  // apply(X, 1) = -L^{-1} X, apply(X, 2) = L^{-2} X. X must be traceless to
  // 1e-10 (throws std::invalid_argument). Throws NumericalError if the
  // back-substituted residual is out of tolerance.
  Eigen::MatrixXcd apply(const Eigen::MatrixXcd& x, int order) const;

  // i * integral_0^inf dtau tau * tr(A e^{L tau} [B, eta]); the integrand
  // ordering makes the result real, and the imaginary residue is checked.
  double chi(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) const;

  // integral_0^inf dtau ( tr(A e^{L tau} (B eta + eta B)/2) - <A><B> ),
  // evaluated as -tr(A L^{-1} ((B eta + eta B)/2 - <B> eta)).
  double xi(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) const;

  const Eigen::MatrixXcd& eta() const { return eta_; }

 private:
  Eigen::VectorXcd solve_traceless(const Eigen::VectorXcd& rhs) const;
  double checked_real(std::complex<double> value, const char* what) const;

  int dim_;
  Eigen::MatrixXcd eta_;
  Eigen::MatrixXcd l_;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_; // of the bordered matrix
};

Eigen::MatrixXcd resolvent_apply(const Superoperator& l,
                                 const Eigen::MatrixXcd& eta,
                                 const Eigen::MatrixXcd& x, int order);
double correlation_chi(const Superoperator& l, const Eigen::MatrixXcd& eta,
                       const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);
double correlation_xi(const Superoperator& l, const Eigen::MatrixXcd& eta,
                      const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

} // namespace cavtrap
