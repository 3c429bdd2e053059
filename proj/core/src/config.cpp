#include "cavtrap/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cavtrap {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw std::invalid_argument("config line " + std::to_string(line) + ": " + what);
}

ConfigDoc::Value parse_value(const std::string& raw, int line) {
  if (raw.empty()) parse_fail(line, "missing value");
  if (raw.front() == '"') {
    std::string out;
    bool closed = false;
    std::size_t i = 1;
    for (; i < raw.size(); ++i) {
      const char c = raw[i];
      if (c == '\\') {
        if (i + 1 >= raw.size()) parse_fail(line, "dangling escape in string");
        const char n = raw[++i];
        if (n == '"' || n == '\\')
          out.push_back(n);
        else
          parse_fail(line, "unsupported escape in string");
      } else if (c == '"') {
        closed = true;
        ++i;
        break;
      } else {
        out.push_back(c);
      }
    }
    if (!closed) parse_fail(line, "unterminated string");
    if (!trim(raw.substr(i)).empty()) parse_fail(line, "trailing text after string");
    return out;
  }
  if (raw == "true") return true;
  if (raw == "false") return false;

  const char* begin = raw.data();
  const char* end = raw.data() + raw.size();
  long long iv = 0;
  auto ir = std::from_chars(begin, end, iv);
  if (ir.ec == std::errc() && ir.ptr == end) return iv;
  double dv = 0;
  auto dr = std::from_chars(begin, end, dv);
  if (dr.ec == std::errc() && dr.ptr == end) return dv;
  parse_fail(line, "cannot parse value '" + raw + "'");
}

std::string format_value(const ConfigDoc::Value& v) {
  if (std::holds_alternative<bool>(v)) return std::get<bool>(v) ? "true" : "false";
  if (std::holds_alternative<long long>(v)) return std::to_string(std::get<long long>(v));
  if (std::holds_alternative<double>(v)) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", std::get<double>(v));
    return buf;
  }
  std::string out = "\"";
  for (char c : std::get<std::string>(v)) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

bool valid_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

} // namespace

ConfigDoc ConfigDoc::parse_string(const std::string& text) {
  ConfigDoc doc;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    if (s.front() == '[') {
      if (s.back() != ']') parse_fail(lineno, "unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section.empty()) parse_fail(lineno, "empty section name");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) parse_fail(lineno, "expected key = value");
    const std::string key = trim(s.substr(0, eq));
    if (key.empty()) parse_fail(lineno, "empty key");
    for (char c : key)
      if (!valid_key_char(c)) parse_fail(lineno, "bad character in key '" + key + "'");
    std::string raw = trim(s.substr(eq + 1));
    // strip trailing comment, respecting quoted strings
    if (!raw.empty() && raw.front() != '"') {
      const auto hash = raw.find('#');
      if (hash != std::string::npos) raw = trim(raw.substr(0, hash));
    }
    if (doc.find(section, key))
      parse_fail(lineno, "duplicate key '" + section + "." + key + "'");
    doc.set(section, key, parse_value(raw, lineno));
  }
  return doc;
}

ConfigDoc ConfigDoc::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str());
}

const ConfigDoc::Entry* ConfigDoc::find(const std::string& section,
                                        const std::string& key) const {
  for (const Entry& e : entries_)
    if (e.section == section && e.key == key) return &e;
  return nullptr;
}

bool ConfigDoc::has(const std::string& section, const std::string& key) const {
  const Entry* e = find(section, key);
  if (e) e->read = true;
  return e != nullptr;
}

namespace {
[[noreturn]] void type_fail(const std::string& section, const std::string& key,
                            const char* want) {
  throw std::invalid_argument("config key " + section + "." + key + ": expected " + want);
}
} // namespace

bool ConfigDoc::get_bool(const std::string& section, const std::string& key) const {
  const Entry* e = find(section, key);
  if (!e) throw std::invalid_argument("missing config key " + section + "." + key);
  e->read = true;
  if (!std::holds_alternative<bool>(e->value)) type_fail(section, key, "a boolean");
  return std::get<bool>(e->value);
}

long long ConfigDoc::get_int(const std::string& section, const std::string& key) const {
  const Entry* e = find(section, key);
  if (!e) throw std::invalid_argument("missing config key " + section + "." + key);
  e->read = true;
  if (!std::holds_alternative<long long>(e->value)) type_fail(section, key, "an integer");
  return std::get<long long>(e->value);
}

double ConfigDoc::get_double(const std::string& section, const std::string& key) const {
  const Entry* e = find(section, key);
  if (!e) throw std::invalid_argument("missing config key " + section + "." + key);
  e->read = true;
  if (std::holds_alternative<long long>(e->value))
    return static_cast<double>(std::get<long long>(e->value));
  if (!std::holds_alternative<double>(e->value)) type_fail(section, key, "a number");
  return std::get<double>(e->value);
}

std::string ConfigDoc::get_string(const std::string& section,
                                  const std::string& key) const {
  const Entry* e = find(section, key);
  if (!e) throw std::invalid_argument("missing config key " + section + "." + key);
  e->read = true;
  if (!std::holds_alternative<std::string>(e->value)) type_fail(section, key, "a string");
  return std::get<std::string>(e->value);
}

void ConfigDoc::set(const std::string& section, const std::string& key, Value value) {
  for (Entry& e : entries_) {
    if (e.section == section && e.key == key) {
      e.value = std::move(value);
      return;
    }
  }
  entries_.push_back({section, key, std::move(value), false});
}

std::vector<std::string> ConfigDoc::unread_keys() const {
  std::vector<std::string> out;
  for (const Entry& e : entries_)
    if (!e.read) out.push_back(e.section + "." + e.key);
  return out;
}

std::string ConfigDoc::serialize() const {
  std::vector<std::string> order;
  for (const Entry& e : entries_) {
    bool seen = false;
    for (const std::string& s : order) seen = seen || s == e.section;
    if (!seen) order.push_back(e.section);
  }
  std::string out;
  for (const std::string& section : order) {
    if (!out.empty()) out += "\n";
    out += "[" + section + "]\n";
    for (const Entry& e : entries_)
      if (e.section == section) out += e.key + " = " + format_value(e.value) + "\n";
  }
  return out;
}

InitialConditionSpec RunConfig::initial_conditions() const {
  InitialConditionSpec ic;
  if (launch == "random")
    ic = InitialConditionSpec::standard(physics, well_index);
  else if (launch == "tangential")
    ic = InitialConditionSpec::tangential(physics, well_index);
  else if (launch == "orthogonal")
    ic = InitialConditionSpec::orthogonal(physics, well_index);
  else
    throw std::invalid_argument("unknown launch mode: " + launch);
  ic.speed = launch_speed;
  return ic;
}

WellSpec RunConfig::well() const { return WellSpec::around_well(physics, well_index); }

void RunConfig::apply(const ConfigDoc& doc) {
  const std::string P = "physics";
  if (doc.has(P, "scenario")) {
    scenario_name = doc.get_string(P, "scenario");
    physics = scenario_params(scenario_from_name(scenario_name));
  }

  if (doc.has(P, "gamma")) physics.gamma = doc.get_double(P, "gamma");
  if (doc.has(P, "kappa")) physics.kappa = doc.get_double(P, "kappa");
  if (doc.has(P, "g0")) physics.g0 = doc.get_double(P, "g0");
  if (doc.has(P, "drive")) physics.drive = doc.get_double(P, "drive");
  if (doc.has(P, "delta_p")) physics.delta_p = doc.get_double(P, "delta_p");
  if (doc.has(P, "lambda_g")) {
    physics.lambda_g = doc.get_double(P, "lambda_g");
    physics.lambda_S = physics.lambda_g * 16.0 / 15.0;
  }
  if (doc.has(P, "lambda_S")) physics.lambda_S = doc.get_double(P, "lambda_S");
  if (doc.has(P, "waist_g")) physics.waist_g = doc.get_double(P, "waist_g");
  if (doc.has(P, "waist_S")) physics.waist_S = doc.get_double(P, "waist_S");
  if (doc.has(P, "lg_order")) physics.lg_order = static_cast<int>(doc.get_int(P, "lg_order"));
  const bool has_amp = doc.has(P, "stark_amplitude");
  const bool has_peak = doc.has(P, "stark_peak");
  if (has_amp && has_peak)
    throw std::invalid_argument("config: give stark_amplitude or stark_peak, not both");
  if (has_amp) physics.stark_amplitude = doc.get_double(P, "stark_amplitude");
  if (has_peak)
    physics.stark_amplitude = stark_amplitude_for_peak(
        doc.get_double(P, "stark_peak"), physics.waist_S, physics.lg_order);
  if (doc.has(P, "stark_case")) {
    const std::string c = doc.get_string(P, "stark_case");
    if (c == "opposite")
      physics.stark_case = StarkCase::opposite;
    else if (c == "equal")
      physics.stark_case = StarkCase::equal;
    else
      throw std::invalid_argument("config: unknown stark_case '" + c + "'");
  }
  if (doc.has(P, "cavity_mode")) {
    const std::string c = doc.get_string(P, "cavity_mode");
    if (c == "gaussian")
      physics.cavity_mode = CavityModeKind::gaussian;
    else if (c == "doughnut")
      physics.cavity_mode = CavityModeKind::doughnut;
    else
      throw std::invalid_argument("config: unknown cavity_mode '" + c + "'");
  }
  if (doc.has(P, "mass_over_hbar")) physics.mass_over_hbar = doc.get_double(P, "mass_over_hbar");
  if (doc.has(P, "n_max")) physics.n_max = static_cast<int>(doc.get_int(P, "n_max"));
  if (doc.has(P, "well_radius")) physics.well_radius = doc.get_double(P, "well_radius");

  const std::string I = "sde";
  if (doc.has(I, "dt")) sde.dt = doc.get_double(I, "dt");
  if (doc.has(I, "t_max")) sde.t_max = doc.get_double(I, "t_max");
  if (doc.has(I, "sample_stride")) sde.sample_stride = static_cast<int>(doc.get_int(I, "sample_stride"));
  if (doc.has(I, "equilibration")) sde.equilibration = doc.get_double(I, "equilibration");
  if (doc.has(I, "friction")) sde.friction = doc.get_bool(I, "friction");
  if (doc.has(I, "dipole_noise")) sde.dipole_noise = doc.get_bool(I, "dipole_noise");
  if (doc.has(I, "recoil_noise")) sde.recoil_noise = doc.get_bool(I, "recoil_noise");
  if (doc.has(I, "well_index")) well_index = static_cast<int>(doc.get_int(I, "well_index"));
  if (doc.has(I, "launch")) launch = doc.get_string(I, "launch");
  if (doc.has(I, "launch_speed")) launch_speed = doc.get_double(I, "launch_speed");

  const std::string E = "ensemble";
  if (doc.has(E, "n")) ensemble_size = static_cast<int>(doc.get_int(E, "n"));
  if (doc.has(E, "seed")) seed = static_cast<std::uint64_t>(doc.get_int(E, "seed"));
  if (doc.has(E, "workers")) workers = static_cast<int>(doc.get_int(E, "workers"));

  const std::string C = "grid";
  if (doc.has(C, "cache")) use_cache = doc.get_bool(C, "cache");
  if (doc.has(C, "n_g")) cache_n_g = static_cast<int>(doc.get_int(C, "n_g"));
  if (doc.has(C, "n_s")) cache_n_s = static_cast<int>(doc.get_int(C, "n_s"));

  const std::string O = "io";
  if (doc.has(O, "out_dir")) out_dir = doc.get_string(O, "out_dir");
  if (doc.has(O, "timestamp")) timestamp = doc.get_bool(O, "timestamp");

  const auto unread = doc.unread_keys();
  if (!unread.empty()) {
    std::string msg = "config: unknown keys:";
    for (const std::string& k : unread) msg += " " + k;
    throw std::invalid_argument(msg);
  }
  physics.validate();
}

ConfigDoc RunConfig::to_doc() const {
  ConfigDoc doc;
  const std::string P = "physics";
  doc.set(P, "scenario", scenario_name);
  doc.set(P, "gamma", physics.gamma);
  doc.set(P, "kappa", physics.kappa);
  doc.set(P, "g0", physics.g0);
  doc.set(P, "drive", physics.drive);
  doc.set(P, "delta_p", physics.delta_p);
  doc.set(P, "lambda_g", physics.lambda_g);
  doc.set(P, "lambda_S", physics.lambda_S);
  doc.set(P, "waist_g", physics.waist_g);
  doc.set(P, "waist_S", physics.waist_S);
  doc.set(P, "stark_amplitude", physics.stark_amplitude);
  doc.set(P, "lg_order", static_cast<long long>(physics.lg_order));
  doc.set(P, "stark_case",
          std::string(physics.stark_case == StarkCase::opposite ? "opposite" : "equal"));
  doc.set(P, "cavity_mode",
          std::string(physics.cavity_mode == CavityModeKind::gaussian ? "gaussian"
                                                                      : "doughnut"));
  doc.set(P, "mass_over_hbar", physics.mass_over_hbar);
  doc.set(P, "n_max", static_cast<long long>(physics.n_max));
  doc.set(P, "well_radius", physics.well_radius);

  const std::string C = "grid";
  doc.set(C, "cache", use_cache);
  doc.set(C, "n_g", static_cast<long long>(cache_n_g));
  doc.set(C, "n_s", static_cast<long long>(cache_n_s));

  const std::string I = "sde";
  doc.set(I, "dt", sde.dt);
  doc.set(I, "t_max", sde.t_max);
  doc.set(I, "sample_stride", static_cast<long long>(sde.sample_stride));
  doc.set(I, "equilibration", sde.equilibration);
  doc.set(I, "friction", sde.friction);
  doc.set(I, "dipole_noise", sde.dipole_noise);
  doc.set(I, "recoil_noise", sde.recoil_noise);
  doc.set(I, "well_index", static_cast<long long>(well_index));
  doc.set(I, "launch", launch);
  doc.set(I, "launch_speed", launch_speed);

  const std::string E = "ensemble";
  doc.set(E, "n", static_cast<long long>(ensemble_size));
  doc.set(E, "seed", static_cast<long long>(seed));
  doc.set(E, "workers", static_cast<long long>(workers));

  const std::string O = "io";
  doc.set(O, "out_dir", out_dir);
  doc.set(O, "timestamp", timestamp);
  return doc;
}

RunConfig config_for_scenario(const std::string& scenario_name) {
  RunConfig cfg;
  cfg.scenario_name = scenario_name;
  const Scenario sc = scenario_from_name(scenario_name);
  cfg.physics = scenario_params(sc);
  if (sc == Scenario::case_b_intense) cfg.sde.t_max = 3e6;
  return cfg;
}

} // namespace cavtrap
