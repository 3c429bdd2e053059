#pragma once

#include <cstdint>
#include <vector>

#include "cavtrap/coefficients.hpp"
#include "cavtrap/fields.hpp"
#include "cavtrap/params.hpp"
#include "cavtrap/rng.hpp"

namespace cavtrap {

struct PhaseState {
  double t = 0;
  Vec3 r;
  Vec3 v;
};

// Escape boundary for one trap well: a quarter trap wavelength axially
// around the well center, a fixed radius transversally.
struct WellSpec {
  double center_x = 0;
  double axial_half_width = 0;
  double radial_bound = 0;

  static WellSpec around_well(const PhysicalParams& p, int n) {
    return {p.well_center(n), p.lambda_S / 4.0, p.well_radius};
  }
  bool inside_axially(const Vec3& r) const {
    return std::abs(r.x - center_x) <= axial_half_width;
  }
  bool inside_radially(const Vec3& r) const {
    return r.rho() <= radial_bound;
  }
};

enum class EndReason { axial_escape, radial_escape, time_limit };
const char* end_reason_name(EndReason r);

struct TrajectoryStats {
  double vx_rms_full = 0;
  double vx_rms_post = 0;   // over t >= equilibration, 0 if that window is empty
  bool post_window = false; // whether the post-equilibration window is non-empty
  double g_lo_post = 0;     // 1st percentile of |g| over post-window samples
  double g_hi_post = 0;     // 99th percentile
};

struct Trajectory {
  std::vector<PhaseState> samples; // head state plus every sample_stride-th step
  double end_time = 0;
  EndReason end_reason = EndReason::time_limit;
  TrajectoryStats stats;
};

struct SdeSettings {
  double dt = 0.005;            // us
  double t_max = 2e5;           // us
  int sample_stride = 200;      // steps between retained samples
  double equilibration = 2000.; // us, start of the velocity/coupling stats window
  bool friction = true;
  bool dipole_noise = true;
  bool recoil_noise = true;
};

// Stochastic center-of-mass motion: at each step the velocity is kicked by
// the mean force, the axial friction, and two noise channels (axial dipole
// fluctuations; recoil kicks in all three directions with directional
// weights 2/5 axial, 3/10 transverse), then the position drifts with the
// updated velocity. Updating the position with the post-kick velocity keeps
// the oscillatory motion free of secular energy drift at the default step.
// Noise increments use the convention <dW^2> = 2 dt with standard-form
// amplitudes sqrt(2 D_xx)/M and (hbar k_a/M) sqrt(2 gamma <ee> E_ii), so the
// realized velocity variance of each channel grows at 4 D dt.
class TrajectorySimulator {
 public:
  TrajectorySimulator(const ModeGeometry& geom, const BlochProvider& bloch);

  // One update consuming four unit normals z (axial dipole, recoil x/y/z).
  PhaseState step_with_noise(const PhaseState& s, const SdeSettings& set,
                             const double z[4]) const;
  PhaseState step(const PhaseState& s, const SdeSettings& set,
                  GaussianStream& rng) const;

  Trajectory simulate(const PhaseState& initial, const WellSpec& well,
                      const SdeSettings& set, GaussianStream& rng) const;

  const ModeGeometry& geometry() const { return *geom_; }

 private:
  const ModeGeometry* geom_;
  const BlochProvider* bloch_;
  double vrec_;        // recoil velocity
  double gamma_;
  double recoil_xx_;   // directional weight along the cavity axis
  double recoil_yy_;
};

struct ConvergenceReport {
  double max_divergence = 0;    // max |x(dt) - x(dt/2)|, matched noise [um]
  double rel_divergence = 0;    // over the axial half width
  double energy_drift_per_ms = 0; // frozen-well oscillator, noise off
  double frozen_well_period = 0;  // 2 pi / omega of that oscillator [us]
  bool stable = false;
};

// Certifies a step size: integrates a matched-noise pair at dt and dt/2
// (the finer path consumes a bridge refinement of the same increments) and
// a deterministic oscillator in the frozen axial well.
ConvergenceReport convergence_probe(const TrajectorySimulator& sim,
                                    const PhaseState& initial,
                                    const WellSpec& well, SdeSettings set,
                                    double probe_time, std::uint64_t seed);

} // namespace cavtrap
