#include "cavtrap/sde.hpp"

#include <cmath>
#include <sstream>

#include "cavtrap/errors.hpp"
#include "cavtrap/units.hpp"

namespace cavtrap {

namespace {
constexpr double velocity_guard = 1e3; // um/us; far beyond any bound motion
}

const char* end_reason_name(EndReason r) {
  switch (r) {
    case EndReason::axial_escape: return "axial";
    case EndReason::radial_escape: return "radial";
    case EndReason::time_limit: return "censored";
  }
  return "?";
}

TrajectorySimulator::TrajectorySimulator(const ModeGeometry& geom,
                                         const BlochProvider& bloch)
    : geom_(&geom), bloch_(&bloch) {
  const PhysicalParams& p = geom.params();
  vrec_ = p.recoil_velocity();
  gamma_ = p.gamma;
  recoil_xx_ = 2.0 / 5.0;
  recoil_yy_ = 3.0 / 10.0;
}

PhaseState TrajectorySimulator::step_with_noise(const PhaseState& s,
                                                const SdeSettings& set,
                                                const double z[4]) const {
  const LocalCoefficients c = local_coefficients(s.r, *geom_, *bloch_);
  const double dt = set.dt;
  // Wiener increments carry variance 2 dt and the channel amplitudes are the
  // standard fluctuation forms sqrt(2 D), so each noise channel grows the
  // velocity variance at 4 D dt per unit time.
  const double root = std::sqrt(2.0 * dt);

  PhaseState n;
  n.t = s.t + dt;
  n.v = s.v + c.accel * dt;
  if (set.friction) n.v.x -= c.friction_xx * s.v.x * dt;
  if (set.dipole_noise) n.v.x += std::sqrt(2.0 * c.vel_diffusion_xx) * root * z[0];
  if (set.recoil_noise) {
    const double base = 2.0 * gamma_ * c.exp_ee;
    n.v.x += vrec_ * std::sqrt(base * recoil_xx_) * root * z[1];
    n.v.y += vrec_ * std::sqrt(base * recoil_yy_) * root * z[2];
    n.v.z += vrec_ * std::sqrt(base * recoil_yy_) * root * z[3];
  }
  n.r = s.r + n.v * dt;

  if (!(std::isfinite(n.r.x) && std::isfinite(n.r.y) && std::isfinite(n.r.z) &&
        std::isfinite(n.v.x) && std::isfinite(n.v.y) &&
        std::isfinite(n.v.z)) ||
      n.v.norm() > velocity_guard) {
    std::ostringstream msg;
    msg << "trajectory blow-up at t = " << n.t;
    throw NumericalError(msg.str());
  }
  return n;
}

PhaseState TrajectorySimulator::step(const PhaseState& s,
                                     const SdeSettings& set,
                                     GaussianStream& rng) const {
  double z[4] = {0, 0, 0, 0};
  if (set.dipole_noise) z[0] = rng.normal();
  if (set.recoil_noise) {
    z[1] = rng.normal();
    z[2] = rng.normal();
    z[3] = rng.normal();
  }
  return step_with_noise(s, set, z);
}

Trajectory TrajectorySimulator::simulate(const PhaseState& initial,
                                         const WellSpec& well,
                                         const SdeSettings& set,
                                         GaussianStream& rng) const {
  Trajectory traj;
  traj.samples.push_back(initial);

  PhaseState s = initial;
  double sum_vx2_full = 0, sum_vx2_post = 0;
  std::int64_t n_full = 0, n_post = 0;

  const std::int64_t max_steps =
      static_cast<std::int64_t>(std::ceil(set.t_max / set.dt - 1e-9));
  traj.end_reason = EndReason::time_limit;

  for (std::int64_t k = 1; k <= max_steps; ++k) {
    s = step(s, set, rng);

    sum_vx2_full += s.v.x * s.v.x;
    ++n_full;
    if (s.t >= set.equilibration) {
      sum_vx2_post += s.v.x * s.v.x;
      ++n_post;
    }

    const bool sample_due = (k % set.sample_stride == 0);
    if (!well.inside_axially(s.r)) {
      traj.end_reason = EndReason::axial_escape;
    } else if (!well.inside_radially(s.r)) {
      traj.end_reason = EndReason::radial_escape;
    }
    const bool done = traj.end_reason != EndReason::time_limit;
    if (sample_due || done || k == max_steps) traj.samples.push_back(s);
    if (done) break;
  }

  traj.end_time = s.t;
  traj.stats.vx_rms_full = n_full > 0 ? std::sqrt(sum_vx2_full / n_full) : 0.0;
  traj.stats.post_window = n_post > 0;
  traj.stats.vx_rms_post = n_post > 0 ? std::sqrt(sum_vx2_post / n_post) : 0.0;

  // Robust coupling extremes over the recorded post-equilibration samples.
  // Percentiles rather than the running min/max: over tens of milliseconds
  // the trajectory eventually grazes a coupling node, so the raw range
  // saturates at [0, max] and carries no information.
  std::vector<double> gs;
  for (const PhaseState& q : traj.samples)
    if (q.t >= set.equilibration) gs.push_back(std::abs(geom_->coupling(q.r)));
  if (!gs.empty()) {
    auto pct = [&gs](double f) {
      const auto k = static_cast<std::ptrdiff_t>(f * (gs.size() - 1) + 0.5);
      std::nth_element(gs.begin(), gs.begin() + k, gs.end());
      return gs[k];
    };
    traj.stats.g_lo_post = pct(0.01);
    traj.stats.g_hi_post = pct(0.99);
  }
  return traj;
}

ConvergenceReport convergence_probe(const TrajectorySimulator& sim,
                                    const PhaseState& initial,
                                    const WellSpec& well, SdeSettings set,
                                    double probe_time, std::uint64_t seed) {
  ConvergenceReport rep;
  const PhysicalParams& p = sim.geometry().params();

  // Matched-noise pair: the coarse path consumes unit normals z; the fine
  // path consumes a bridge split of the same increments. With the
  // <dW^2> = 2 dt convention a coarse increment is sqrt(2 dt) z, each half
  // gets half of it plus/minus an independent sqrt(dt/2) refinement.
  const std::int64_t steps =
      static_cast<std::int64_t>(std::ceil(probe_time / set.dt - 1e-9));
  GaussianStream coarse_rng(seed, 0);
  GaussianStream refine_rng(seed, 1);

  SdeSettings fine_set = set;
  fine_set.dt = 0.5 * set.dt;

  PhaseState coarse = initial;
  PhaseState fine = initial;
  const double root_coarse = std::sqrt(2.0 * set.dt);
  const double root_fine = std::sqrt(2.0 * fine_set.dt);

  for (std::int64_t k = 0; k < steps; ++k) {
    double z[4], zf1[4], zf2[4];
    for (int i = 0; i < 4; ++i) {
      z[i] = coarse_rng.normal();
      const double w = root_coarse * z[i];
      const double eta = std::sqrt(0.5 * set.dt) * refine_rng.normal();
      zf1[i] = (0.5 * w + eta) / root_fine;
      zf2[i] = (0.5 * w - eta) / root_fine;
    }
    coarse = sim.step_with_noise(coarse, set, z);
    fine = sim.step_with_noise(fine, fine_set, zf1);
    fine = sim.step_with_noise(fine, fine_set, zf2);
    rep.max_divergence =
        std::max(rep.max_divergence, std::abs(coarse.r.x - fine.r.x));
    if (!well.inside_axially(coarse.r) || !well.inside_radially(coarse.r) ||
        !well.inside_axially(fine.r) || !well.inside_radially(fine.r))
      break;
  }
  rep.rel_divergence = rep.max_divergence / well.axial_half_width;

  // Deterministic oscillator in the frozen axial well: the trap curvature
  // at the well bottom gives omega^2 = 2 (hbar/M) S_max k_S^2.
  const double omega2 =
      2.0 * p.hbar_over_mass() * p.stark_max() * p.k_S() * p.k_S();
  rep.frozen_well_period = units::two_pi / std::sqrt(omega2);
  {
    const double amp = 0.2 * well.axial_half_width;
    double x = amp, v = 0;
    const double e0 = 0.5 * omega2 * amp * amp;
    const std::int64_t n =
        static_cast<std::int64_t>(std::llround(1000.0 / set.dt));
    for (std::int64_t k = 0; k < n; ++k) {
      v -= omega2 * x * set.dt;
      x += v * set.dt;
    }
    const double e1 = 0.5 * (v * v + omega2 * x * x);
    rep.energy_drift_per_ms = std::abs(e1 - e0) / e0;
  }

  rep.stable = rep.rel_divergence < 0.5 && rep.energy_drift_per_ms < 0.01;
  return rep;
}

} // namespace cavtrap
