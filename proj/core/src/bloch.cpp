#include "cavtrap/bloch.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cavtrap/resolvent.hpp"

namespace cavtrap {

BlochSolver::BlochSolver(const PhysicalParams& p)
    : p_(p), ops_(build_operators(p.n_max)) {
  p_.validate();
  psi_ = stark_generator(ops_, p_.stark_case);
}

void BlochSolver::check_domain(double g, double s) const {
  const double g_tol = 1e-9 * p_.g0;
  const double s_max = p_.stark_max();
  const double s_tol = 1e-9 * (s_max > 0 ? s_max : 1.0);
  if (!(std::abs(g) <= p_.g0 + g_tol) || !(s >= -s_tol) ||
      !(s <= s_max + s_tol)) {
    std::ostringstream msg;
    msg << "(g, S) = (" << g << ", " << s << ") outside |g| <= " << p_.g0
        << ", 0 <= S <= " << s_max;
    throw std::invalid_argument(msg.str());
  }
}

Superoperator BlochSolver::liouvillian(double g, double s) const {
  const Eigen::MatrixXcd h = build_hamiltonian(ops_, p_, g, s);
  return build_liouvillian(ops_, h, p_.kappa, p_.gamma);
}

Eigen::MatrixXcd BlochSolver::steady(double g, double s) const {
  check_domain(g, s);
  return steady_state(liouvillian(g, s), opt_);
}

BlochPoint BlochSolver::solve(double g, double s) const {
  check_domain(g, s);
  const Superoperator l = liouvillian(g, s);
  const Eigen::MatrixXcd eta = steady_state(l, opt_);
  const Resolvent res(l, eta);

  BlochPoint b;
  b.exp_phi = (ops_.phi * eta).trace().real();
  b.exp_psi = (psi_ * eta).trace().real();
  b.exp_ee = (ops_.sigma_ee * eta).trace().real();

  b.chi_gg = res.chi(ops_.phi, ops_.phi);
  b.chi_gs = res.chi(ops_.phi, psi_);
  b.chi_sg = res.chi(psi_, ops_.phi);
  b.chi_ss = res.chi(psi_, psi_);

  b.xi_gg = res.xi(ops_.phi, ops_.phi);
  b.xi_gs = res.xi(ops_.phi, psi_);
  b.xi_sg = res.xi(psi_, ops_.phi);
  b.xi_ss = res.xi(psi_, psi_);
  return b;
}

} // namespace cavtrap
