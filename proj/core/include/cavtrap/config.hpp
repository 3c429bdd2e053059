#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "cavtrap/ensemble.hpp"
#include "cavtrap/params.hpp"
#include "cavtrap/sde.hpp"

namespace cavtrap {

// Flat configuration document: [section] headers, key = value lines,
// # comments. Values are booleans, integers, doubles, or quoted strings.
class ConfigDoc {
public:
  using Value = std::variant<bool, long long, double, std::string>;

  static ConfigDoc parse_file(const std::string& path);
  static ConfigDoc parse_string(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;

  bool get_bool(const std::string& section, const std::string& key) const;
  long long get_int(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key) const;

  void set(const std::string& section, const std::string& key, Value value);

  // Keys present in the document but never consumed by a getter; used to
  // reject misspelled configuration entries.
  std::vector<std::string> unread_keys() const;

  // Writes sections in first-insertion order; doubles carry 17 significant
  // digits so a written document parses back to the same values.
  std::string serialize() const;

private:
  struct Entry {
    std::string section;
    std::string key;
    Value value;
    mutable bool read = false;
  };
  const Entry* find(const std::string& section, const std::string& key) const;
  std::vector<Entry> entries_;
};

// Everything a run needs: resolved physics plus integrator, launch, cache,
// and ensemble settings.
struct RunConfig {
  PhysicalParams physics = scenario_params(Scenario::case_b);
  std::string scenario_name = "case-b";

  SdeSettings sde;

  int well_index = 5;
  std::string launch = "random"; // random | tangential | orthogonal
  double launch_speed = 0.1;

  int ensemble_size = 400;
  std::uint64_t seed = 1;
  int workers = 0; // 0 selects the hardware thread count

  bool use_cache = true;
  int cache_n_g = 65;
  int cache_n_s = 65;

  std::string out_dir = ".";
  bool timestamp = true;

  InitialConditionSpec initial_conditions() const;
  WellSpec well() const;

  // Overlays file values onto the current state. Throws
  // std::invalid_argument on unknown keys or inconsistent values.
  void apply(const ConfigDoc& doc);

  ConfigDoc to_doc() const;
};

RunConfig config_for_scenario(const std::string& scenario_name);

} // namespace cavtrap
