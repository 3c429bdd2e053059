#pragma once

#include <cstdint>
#include <vector>

#include "cavtrap/sde.hpp"

namespace cavtrap {

// Launch distribution: the atom enters on the trap-intensity ring at a
// uniformly random azimuth, axially offset inside one well, with a fixed
// velocity along z. theta = 0 puts the atom at (y, z) = (rho_launch, 0), so
// the velocity is tangent to the ring; theta = pi/2 puts it at
// (0, rho_launch), making the velocity radial.
struct InitialConditionSpec {
  double x0 = 0;          // axial start [um]
  double rho_launch = 0;  // launch radius [um]
  double speed = 0.1;     // along z [um/us]
  bool random_theta = true;
  double theta0 = 0;      // used when random_theta is false

  static InitialConditionSpec standard(const PhysicalParams& p, int well = 5);
  static InitialConditionSpec tangential(const PhysicalParams& p, int well = 5);
  static InitialConditionSpec orthogonal(const PhysicalParams& p, int well = 5);
};

// Draws the launch state for one trajectory. The azimuth (when random) is
// the first draw from the trajectory's stream, so the full trajectory is a
// function of (master_seed, index) alone.
PhaseState sample_initial(const InitialConditionSpec& ic, GaussianStream& rng);

struct TrajectoryRecord {
  int index = 0;
  double theta0 = 0;
  double end_time = 0;
  EndReason end_reason = EndReason::time_limit;
  TrajectoryStats stats;
};

struct EnsembleResult {
  std::vector<TrajectoryRecord> records; // ordered by trajectory index
  std::uint64_t master_seed = 0;
  SdeSettings settings;
};

// N independent trajectories on streams 0..n-1 of master_seed. The result
// is a pure function of (inputs, master_seed): records are written into
// fixed slots, so worker count and scheduling cannot change anything.
EnsembleResult run_ensemble(const TrajectorySimulator& sim,
                            const InitialConditionSpec& ic,
                            const WellSpec& well, const SdeSettings& set,
                            int n, std::uint64_t master_seed,
                            int n_workers = 0);

} // namespace cavtrap
