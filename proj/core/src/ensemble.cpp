#include "cavtrap/ensemble.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "cavtrap/units.hpp"

namespace cavtrap {

InitialConditionSpec InitialConditionSpec::standard(const PhysicalParams& p,
                                                    int well) {
  InitialConditionSpec ic;
  // An eighth of a trap wavelength off the well center: halfway out the well.
  ic.x0 = p.well_center(well) - p.lambda_S / 8.0;
  ic.rho_launch = p.rho_max();
  ic.speed = 0.1;
  ic.random_theta = true;
  return ic;
}

InitialConditionSpec InitialConditionSpec::tangential(const PhysicalParams& p,
                                                      int well) {
  InitialConditionSpec ic = standard(p, well);
  ic.random_theta = false;
  ic.theta0 = 0.0;
  return ic;
}

InitialConditionSpec InitialConditionSpec::orthogonal(const PhysicalParams& p,
                                                      int well) {
  InitialConditionSpec ic = standard(p, well);
  ic.random_theta = false;
  ic.theta0 = 0.5 * units::pi;
  return ic;
}

PhaseState sample_initial(const InitialConditionSpec& ic, GaussianStream& rng) {
  const double theta =
      ic.random_theta ? units::two_pi * rng.uniform() : ic.theta0;
  PhaseState s;
  s.t = 0;
  s.r = {ic.x0, ic.rho_launch * std::cos(theta),
         ic.rho_launch * std::sin(theta)};
  s.v = {0, 0, ic.speed};
  return s;
}

EnsembleResult run_ensemble(const TrajectorySimulator& sim,
                            const InitialConditionSpec& ic,
                            const WellSpec& well, const SdeSettings& set,
                            int n, std::uint64_t master_seed, int n_workers) {
  if (n < 1) throw std::invalid_argument("ensemble size must be positive");

  EnsembleResult result;
  result.master_seed = master_seed;
  result.settings = set;
  result.records.resize(n);

  if (n_workers <= 0) {
    const unsigned hc = std::thread::hardware_concurrency();
    n_workers = hc > 0 ? static_cast<int>(hc) : 1;
  }
  n_workers = std::min(n_workers, n);

  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&]() {
    try {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n) break;
        GaussianStream rng(master_seed, static_cast<std::uint64_t>(i));
        const PhaseState start = sample_initial(ic, rng);
        const Trajectory t = sim.simulate(start, well, set, rng);

        TrajectoryRecord& rec = result.records[i];
        rec.index = i;
        rec.theta0 = std::atan2(start.r.z, start.r.y);
        rec.end_time = t.end_time;
        rec.end_reason = t.end_reason;
        rec.stats = t.stats;
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
      next.store(n);
    }
  };

  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return result;
}

} // namespace cavtrap
