#pragma once

#include <string>

#include "cavtrap/config.hpp"
#include "cavtrap/ensemble.hpp"
#include "cavtrap/stats.hpp"

namespace cavtrap {

// Nine significant digits in scientific notation.
std::string format_sci(double v);

// Writes content to a sibling temp file and renames it into place, so a
// reader never sees a half-written file.
void write_file_atomic(const std::string& path, const std::string& content);

struct ReportOptions {
  bool timestamp = true;
};

// Per-trajectory table: launch angle, lifetime, exit channel, velocity
// spread and coupling excursion statistics.
std::string records_csv(const EnsembleResult& result);

// Product-limit survival curve as (time, probability) rows.
std::string survival_csv(const SurvivalEstimate& est);

// Key = value summary of an ensemble run: decay constants in milliseconds,
// trapped fraction, velocity spreads, exit channel tallies.
std::string ensemble_report(const EnsembleResult& result, const SurvivalEstimate& est,
                            const Classification& cls, const RunConfig& cfg,
                            const ReportOptions& opt = {});

} // namespace cavtrap
