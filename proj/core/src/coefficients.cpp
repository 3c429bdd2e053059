#include "cavtrap/coefficients.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cavtrap/errors.hpp"

namespace cavtrap {

namespace {

using Node = CoefficientCache::Node;

Node pack(const BlochPoint& b) {
  return {b.exp_phi, b.exp_psi, b.exp_ee, b.chi_gg, b.chi_gs, b.chi_sg,
          b.chi_ss,  b.xi_gg,   b.xi_gs,  b.xi_sg,  b.xi_ss};
}

BlochPoint unpack(const Node& n) {
  BlochPoint b;
  b.exp_phi = n[0];
  b.exp_psi = n[1];
  b.exp_ee = n[2];
  b.chi_gg = n[3];
  b.chi_gs = n[4];
  b.chi_sg = n[5];
  b.chi_ss = n[6];
  b.xi_gg = n[7];
  b.xi_gs = n[8];
  b.xi_sg = n[9];
  b.xi_ss = n[10];
  return b;
}

// Quantities odd under g -> -g: <Phi> and the mixed chi/xi integrals.
constexpr int odd_indices[] = {0, 4, 5, 8, 9};

// Second derivatives of the not-a-knot cubic spline through f (uniform
// spacing h, n >= 4 points). With uniform spacing the no-knot condition
// pins the second derivative at nodes 1 and n-2 to the plain second
// difference; the interior is the usual tridiagonal system.
void spline_second_derivatives(const double* f, int n, int stride, double h,
                               double* m, int mstride) {
  auto fv = [&](int i) { return f[i * stride]; };
  auto mv = [&](int i) -> double& { return m[i * mstride]; };

  const double d2_1 = (fv(2) - 2 * fv(1) + fv(0)) / (h * h);
  const double d2_n2 = (fv(n - 1) - 2 * fv(n - 2) + fv(n - 3)) / (h * h);
  mv(1) = d2_1;
  mv(n - 2) = d2_n2;

  const int unknowns = n - 4; // nodes 2 .. n-3
  if (unknowns > 0) {
    std::vector<double> diag(unknowns, 2.0 * h / 3.0);
    std::vector<double> rhs(unknowns);
    for (int k = 0; k < unknowns; ++k) {
      const int i = k + 2;
      rhs[k] = (fv(i + 1) - 2 * fv(i) + fv(i - 1)) / h;
    }
    rhs[0] -= (h / 6.0) * mv(1);
    rhs[unknowns - 1] -= (h / 6.0) * mv(n - 2);

    const double off = h / 6.0;
    for (int k = 1; k < unknowns; ++k) {
      const double w = off / diag[k - 1];
      diag[k] -= w * off;
      rhs[k] -= w * rhs[k - 1];
    }
    for (int k = unknowns - 1; k >= 0; --k) {
      const double upper = k + 1 < unknowns ? off * mv(k + 3) : 0.0;
      mv(k + 2) = (rhs[k] - upper) / diag[k];
    }
  }

  mv(0) = 2 * mv(1) - mv(2);
  mv(n - 1) = 2 * mv(n - 2) - mv(n - 3);
}

struct SplineBasis {
  double a0, a1, c0, c1;
};

SplineBasis basis(double t, double h) {
  SplineBasis b;
  b.a0 = 1.0 - t;
  b.a1 = t;
  const double s = h * h / 6.0;
  b.c0 = s * (b.a0 * b.a0 * b.a0 - b.a0);
  b.c1 = s * (t * t * t - t);
  return b;
}

} // namespace

CoefficientCache::CoefficientCache(const PhysicalParams& p, int n_g, int n_s,
                                   int n_threads)
    : p_(p), n_g_(n_g), n_s_(n_s) {
  p_.validate();
  if (n_g < 33 || n_s < 33)
    throw std::invalid_argument("cache grid must be at least 33 x 33");
  g_max_ = p_.g0;
  s_max_ = p_.stark_max();
  hg_ = g_max_ / (n_g_ - 1);
  hs_ = s_max_ / (n_s_ - 1);
  build(n_threads);
}

void CoefficientCache::build(int n_threads) {
  const int total = n_g_ * n_s_;
  f_.resize(total);

  if (n_threads <= 0) {
    const unsigned hc = std::thread::hardware_concurrency();
    n_threads = hc > 0 ? static_cast<int>(hc) : 1;
  }
  n_threads = std::min(n_threads, total);

  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&]() {
    try {
      BlochSolver solver(p_);
      solver.set_check_uniqueness(false);
      BlochSolver checked(p_);
      for (;;) {
        const int k = next.fetch_add(1);
        if (k >= total) break;
        const int i = k / n_s_;
        const int j = k % n_s_;
        // Full kernel-uniqueness diagnostics on a coarse subsample; the
        // cheap residual and positivity checks run at every node.
        const bool thorough = (i % 16 == 0) && (j % 16 == 0);
        try {
          f_[k] = pack((thorough ? checked : solver).solve(g_node(i), s_node(j)));
        } catch (const std::exception& e) {
          std::ostringstream msg;
          msg << "cache node (g = " << g_node(i) << ", S = " << s_node(j)
              << "): " << e.what();
          throw NumericalError(msg.str());
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
      next.store(total);
    }
  };

  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  mg_.resize(total);
  ms_.resize(total);
  mgs_.resize(total);
  const int q = n_quantities;
  const int row = n_s_ * q; // stride between consecutive g nodes, in doubles

  for (int i = 0; i < n_g_; ++i)
    for (int c = 0; c < q; ++c)
      spline_second_derivatives(f_[idx(i, 0)].data() + c, n_s_, q, hs_,
                                ms_[idx(i, 0)].data() + c, q);
  for (int j = 0; j < n_s_; ++j)
    for (int c = 0; c < q; ++c) {
      spline_second_derivatives(f_[idx(0, j)].data() + c, n_g_, row, hg_,
                                mg_[idx(0, j)].data() + c, row);
      spline_second_derivatives(ms_[idx(0, j)].data() + c, n_g_, row, hg_,
                                mgs_[idx(0, j)].data() + c, row);
    }
}

BlochPoint CoefficientCache::node(int i, int j) const {
  return unpack(f_[idx(i, j)]);
}

BlochPoint CoefficientCache::at(double g, double s) const {
  const bool flip = g < 0;
  double ga = std::abs(g);

  const double g_slack = 1e-9 * g_max_;
  const double s_slack = 1e-9 * (s_max_ > 0 ? s_max_ : 1.0);
  if (ga > g_max_ + g_slack || s < -s_slack || s > s_max_ + s_slack) {
    std::ostringstream msg;
    msg << "(g, S) = (" << g << ", " << s << ") outside cache domain [0, "
        << g_max_ << "] x [0, " << s_max_ << "]";
    throw std::invalid_argument(msg.str());
  }
  ga = std::min(ga, g_max_);
  s = std::min(std::max(s, 0.0), s_max_);

  int i = std::min(static_cast<int>(ga / hg_), n_g_ - 2);
  int j = std::min(static_cast<int>(s / hs_), n_s_ - 2);
  const SplineBasis bg = basis(ga / hg_ - i, hg_);
  const SplineBasis bs = basis(s / hs_ - j, hs_);

  Node out{};
  const double wa[2] = {bg.a0, bg.a1};
  const double wc[2] = {bg.c0, bg.c1};
  const double va[2] = {bs.a0, bs.a1};
  const double vc[2] = {bs.c0, bs.c1};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const int k = idx(i + a, j + b);
      const double w_ff = wa[a] * va[b];
      const double w_fs = wa[a] * vc[b];
      const double w_gf = wc[a] * va[b];
      const double w_gs = wc[a] * vc[b];
      const Node& nf = f_[k];
      const Node& nms = ms_[k];
      const Node& nmg = mg_[k];
      const Node& nmgs = mgs_[k];
      for (int c = 0; c < n_quantities; ++c)
        out[c] += w_ff * nf[c] + w_fs * nms[c] + w_gf * nmg[c] + w_gs * nmgs[c];
    }

  if (flip)
    for (int c : odd_indices) out[c] = -out[c];
  return unpack(out);
}

Vec3 assemble_accel(const FieldPoint& f, const BlochPoint& b,
                    const PhysicalParams& p) {
  const double hm = p.hbar_over_mass();
  return -hm * (b.exp_phi * f.grad_g + b.exp_psi * f.grad_s);
}

double assemble_friction_xx(const FieldPoint& f, const BlochPoint& b,
                            const PhysicalParams& p) {
  const double dg = f.grad_g.x;
  const double ds = f.grad_s.x;
  return p.hbar_over_mass() * (dg * dg * b.chi_gg +
                               dg * ds * (b.chi_gs + b.chi_sg) +
                               ds * ds * b.chi_ss);
}

double assemble_vel_diffusion_xx(const FieldPoint& f, const BlochPoint& b,
                                 const PhysicalParams& p) {
  const double dg = f.grad_g.x;
  const double ds = f.grad_s.x;
  const double hm = p.hbar_over_mass();
  const double raw = hm * hm * (dg * dg * b.xi_gg +
                                dg * ds * (b.xi_gs + b.xi_sg) +
                                ds * ds * b.xi_ss);
  const double scale = hm * hm * (dg * dg * std::abs(b.xi_gg) +
                                  std::abs(dg * ds) *
                                      (std::abs(b.xi_gs) + std::abs(b.xi_sg)) +
                                  ds * ds * std::abs(b.xi_ss));
  if (raw < -1e-9 * scale) {
    std::ostringstream msg;
    msg << "dipole diffusion " << raw << " negative beyond roundoff scale "
        << scale;
    throw NumericalError(msg.str());
  }
  return raw > 0 ? raw : 0.0;
}

LocalCoefficients local_coefficients(const Vec3& r, const ModeGeometry& geom,
                                     const BlochProvider& bloch) {
  const FieldPoint f = geom.fields(r);
  const BlochPoint b = bloch.at(f.g, f.s);
  const PhysicalParams& p = geom.params();

  LocalCoefficients c;
  c.accel = assemble_accel(f, b, p);
  c.friction_xx = assemble_friction_xx(f, b, p);
  c.vel_diffusion_xx = assemble_vel_diffusion_xx(f, b, p);
  c.exp_ee = b.exp_ee;
  c.g = f.g;
  c.s = f.s;
  return c;
}

} // namespace cavtrap
