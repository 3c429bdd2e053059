#pragma once

#include <cstdint>
#include <vector>

#include "cavtrap/ensemble.hpp"

namespace cavtrap {

struct SurvivalPoint {
  double t = 0;
  double p = 1; // survival just after t
};

struct SurvivalEstimate {
  std::vector<SurvivalPoint> curve; // product-limit estimate at event times
  double tau_mle = 0;     // censoring-aware exponential mean-life estimate
  double tau_lsq = 0;     // slope fit of log survival through the origin
  double sigma_tau = 0;   // bootstrap spread of tau_mle
  int n = 0;
  int n_events = 0;
  int n_censored = 0;
  bool lsq_degenerate = false;  // no interior curve points to fit
  bool low_event_count = false; // fewer than 10 events: estimates are noisy
};

// Product-limit survival curve with right censoring, plus exponential decay
// constants fitted two ways. The mean-life estimator divides total observed
// time by the event count, which handles censored entries exactly for an
// exponential law. Throws std::invalid_argument when every entry is
// censored or the sample is empty.
SurvivalEstimate survival_fit(const std::vector<double>& times,
                              const std::vector<bool>& censored,
                              int bootstrap_resamples = 1000,
                              std::uint64_t seed = 0x5eed);

// Half width of the Dvoretzky-Kiefer-Wolfowitz confidence band for an
// empirical distribution of n samples at confidence 1 - alpha.
double dkw_half_width(int n, double alpha);

struct Classification {
  std::vector<int> trapped;   // indices into the record vector
  std::vector<int> untrapped;
  double trapped_fraction = 0;
  double mean_vx_rms_trapped = 0;   // equilibrated window
  double mean_vx_rms_untrapped = 0; // whole trajectory
};

// A record counts as trapped when it lasted at least min_time and its
// equilibrated axial velocity spread stays under max_vx_rms.
Classification classify_trapped(const std::vector<TrajectoryRecord>& records,
                                double min_time = 2000.0,
                                double max_vx_rms = 0.20);

// Relative swing of the coupling sampled along the equilibrated part of a
// trapped trajectory: (max - min)/max of |g|. Throws std::invalid_argument
// when the record has no equilibrated window.
double coupling_variation(const TrajectoryRecord& rec);

} // namespace cavtrap
