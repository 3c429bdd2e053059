#include "cavtrap/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "cavtrap/rng.hpp"

namespace cavtrap {

namespace {

struct Entry {
  double t;
  bool censored;
};

std::vector<SurvivalPoint> product_limit(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.t != b.t) return a.t < b.t;
    return a.censored < b.censored; // events before censorings at ties
  });
  std::vector<SurvivalPoint> curve;
  const int n = static_cast<int>(entries.size());
  double surv = 1.0;
  int at_risk = n;
  int i = 0;
  while (i < n) {
    const double t = entries[i].t;
    int events = 0;
    int leaving = 0;
    while (i < n && entries[i].t == t) {
      if (!entries[i].censored) ++events;
      ++leaving;
      ++i;
    }
    if (events > 0) {
      surv *= 1.0 - static_cast<double>(events) / at_risk;
      curve.push_back({t, surv});
    }
    at_risk -= leaving;
  }
  return curve;
}

double mean_life(const std::vector<Entry>& entries) {
  double total = 0;
  int events = 0;
  for (const Entry& e : entries) {
    total += e.t;
    if (!e.censored) ++events;
  }
  if (events == 0) return std::numeric_limits<double>::quiet_NaN();
  return total / events;
}

} // namespace

SurvivalEstimate survival_fit(const std::vector<double>& times,
                              const std::vector<bool>& censored,
                              int bootstrap_resamples, std::uint64_t seed) {
  if (times.empty()) throw std::invalid_argument("survival_fit: empty sample");
  if (times.size() != censored.size())
    throw std::invalid_argument("survival_fit: times/censored length mismatch");

  std::vector<Entry> entries(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0) || !std::isfinite(times[i]))
      throw std::invalid_argument("survival_fit: times must be finite and nonnegative");
    entries[i] = {times[i], censored[i]};
  }

  SurvivalEstimate est;
  est.n = static_cast<int>(entries.size());
  for (const Entry& e : entries)
    e.censored ? ++est.n_censored : ++est.n_events;
  if (est.n_events == 0)
    throw std::invalid_argument("survival_fit: every entry is censored");
  est.low_event_count = est.n_events < 10;

  est.curve = product_limit(entries);
  est.tau_mle = mean_life(entries);

  // Least squares through the origin on log survival. Points where the
  // curve has dropped to zero carry no information about the decay rate.
  double sxy = 0;
  double sxx = 0;
  int used = 0;
  for (const SurvivalPoint& pt : est.curve) {
    if (pt.p <= 0 || pt.t <= 0) continue;
    sxy += pt.t * std::log(pt.p);
    sxx += pt.t * pt.t;
    ++used;
  }
  if (used == 0 || sxy >= 0) {
    est.lsq_degenerate = true;
    est.tau_lsq = std::numeric_limits<double>::quiet_NaN();
  } else {
    est.tau_lsq = -sxx / sxy;
  }

  if (bootstrap_resamples > 0 && est.n > 1) {
    GaussianStream rng(seed, 0xB007);
    std::vector<double> taus;
    taus.reserve(bootstrap_resamples);
    std::vector<Entry> resample(entries.size());
    for (int b = 0; b < bootstrap_resamples; ++b) {
      int events = 0;
      for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto j = static_cast<std::size_t>(rng.uniform() * entries.size());
        resample[i] = entries[std::min(j, entries.size() - 1)];
        if (!resample[i].censored) ++events;
      }
      if (events == 0) continue; // no decay information in this draw
      taus.push_back(mean_life(resample));
    }
    if (taus.size() > 1) {
      const double mean = std::accumulate(taus.begin(), taus.end(), 0.0) / taus.size();
      double ss = 0;
      for (double t : taus) ss += (t - mean) * (t - mean);
      est.sigma_tau = std::sqrt(ss / (taus.size() - 1));
    }
  }
  return est;
}

double dkw_half_width(int n, double alpha) {
  if (n <= 0) throw std::invalid_argument("dkw_half_width: n must be positive");
  if (!(alpha > 0 && alpha < 1))
    throw std::invalid_argument("dkw_half_width: alpha must lie in (0,1)");
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * n));
}

Classification classify_trapped(const std::vector<TrajectoryRecord>& records,
                                double min_time, double max_vx_rms) {
  Classification out;
  double sum_trapped = 0;
  double sum_untrapped = 0;
  for (const TrajectoryRecord& rec : records) {
    const double rms =
        rec.stats.post_window ? rec.stats.vx_rms_post : rec.stats.vx_rms_full;
    if (rec.end_time >= min_time && rms < max_vx_rms) {
      out.trapped.push_back(rec.index);
      sum_trapped += rms;
    } else {
      out.untrapped.push_back(rec.index);
      sum_untrapped += rec.stats.vx_rms_full;
    }
  }
  if (!records.empty())
    out.trapped_fraction = static_cast<double>(out.trapped.size()) / records.size();
  if (!out.trapped.empty()) out.mean_vx_rms_trapped = sum_trapped / out.trapped.size();
  if (!out.untrapped.empty())
    out.mean_vx_rms_untrapped = sum_untrapped / out.untrapped.size();
  return out;
}

double coupling_variation(const TrajectoryRecord& rec) {
  if (!rec.stats.post_window)
    throw std::invalid_argument("coupling_variation: trajectory has no equilibrated window");
  const double gmax = rec.stats.g_hi_post;
  const double gmin = rec.stats.g_lo_post;
  if (gmax <= 0)
    throw std::invalid_argument("coupling_variation: coupling vanished over the window");
  return (gmax - gmin) / gmax;
}

} // namespace cavtrap
