#include "cavtrap/report.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cavtrap {

std::string format_sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.8e", v);
  return buf;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("rename to " + path + " failed: " + std::strerror(errno));
}

namespace {

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

} // namespace

std::string records_csv(const EnsembleResult& result) {
  std::ostringstream out;
  out << "index,seed,T_ms,vx_rms_cmps,escape_kind,theta0,vx_rms_post_cmps,"
         "has_post_window,g_lo_post,g_hi_post\n";
  for (const TrajectoryRecord& r : result.records) {
    out << r.index << ',' << result.master_seed << ',' << format_sci(r.end_time / 1000.0)
        << ',' << format_sci(r.stats.vx_rms_full * 100.0) << ','
        << end_reason_name(r.end_reason) << ',' << format_sci(r.theta0) << ','
        << format_sci(r.stats.vx_rms_post * 100.0) << ',' << (r.stats.post_window ? 1 : 0)
        << ',' << format_sci(r.stats.g_lo_post) << ','
        << format_sci(r.stats.g_hi_post) << '\n';
  }
  return out.str();
}

std::string survival_csv(const SurvivalEstimate& est) {
  std::ostringstream out;
  out << "t_us,survival\n";
  out << format_sci(0.0) << ',' << format_sci(1.0) << '\n';
  for (const SurvivalPoint& pt : est.curve)
    out << format_sci(pt.t) << ',' << format_sci(pt.p) << '\n';
  return out.str();
}

std::string ensemble_report(const EnsembleResult& result, const SurvivalEstimate& est,
                            const Classification& cls, const RunConfig& cfg,
                            const ReportOptions& opt) {
  std::ostringstream out;
  if (opt.timestamp) out << "# generated " << utc_now() << "\n";
  out << "scenario = " << cfg.scenario_name << "\n";
  out << "launch = " << cfg.launch << "\n";
  out << "well_index = " << cfg.well_index << "\n";
  out << "seed = " << result.master_seed << "\n";
  out << "n = " << est.n << "\n";
  out << "censored_n = " << est.n_censored << "\n";

  int axial = 0;
  int radial = 0;
  for (const TrajectoryRecord& r : result.records) {
    if (r.end_reason == EndReason::axial_escape) ++axial;
    if (r.end_reason == EndReason::radial_escape) ++radial;
  }
  out << "axial_escapes = " << axial << "\n";
  out << "radial_escapes = " << radial << "\n";

  out << "tau_mle_ms = " << format_sci(est.tau_mle / 1000.0) << "\n";
  if (est.lsq_degenerate)
    out << "tau_lsq_ms = nan\n";
  else
    out << "tau_lsq_ms = " << format_sci(est.tau_lsq / 1000.0) << "\n";
  out << "sigma_ms = " << format_sci(est.sigma_tau / 1000.0) << "\n";
  if (est.low_event_count)
    out << "# note: fewer than 10 uncensored lifetimes, decay constants are noisy\n";

  out << "trapped_fraction = " << format_sci(cls.trapped_fraction) << "\n";
  out << "trapped_n = " << cls.trapped.size() << "\n";
  out << "mean_vx_rms_trapped = " << format_sci(cls.mean_vx_rms_trapped) << "\n";
  out << "mean_vx_rms_untrapped = " << format_sci(cls.mean_vx_rms_untrapped) << "\n";
  return out.str();
}

} // namespace cavtrap
