#include "usc/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "usc/csv.hpp"
#include "usc/error.hpp"

namespace usc::config {

namespace {

// clang-format off
constexpr KeySpec kSchema[] = {
  {"model", "omega_r", Type::number, "5.15"},
  {"model", "g1", Type::number, "3.33"},
  {"model", "g2", Type::number, "3.45"},
  {"model", "delta1", Type::number, "1.31"},
  {"model", "delta2", Type::number, "1.27"},
  {"model", "eps2", Type::number, "-3.22"},
  {"model", "n_cut", Type::integer, "30"},

  {"calibration", "a_crosstalk", Type::number, "-0.00943"},
  {"calibration", "b_plus", Type::number, "0.00078"},
  {"calibration", "b_minus", Type::number, "0.00073"},
  {"calibration", "eps_coeff", Type::number, "201.6"},
  {"calibration", "i_b0", Type::number, "0.547"},

  {"sweep", "start", Type::number, "-4"},
  {"sweep", "stop", Type::number, "4"},
  {"sweep", "points", Type::integer, "81"},
  {"sweep", "unit", Type::text, "ghz", "ghz|ma"},
  {"sweep", "n_levels", Type::integer, "8"},
  {"sweep", "transitions", Type::list, ""},
  {"sweep", "reference", Type::boolean, "false"},
  {"sweep", "fock_tolerance", Type::number, "1e-4"},

  {"anticross", "lower", Type::integer, "3"},
  {"anticross", "upper", Type::integer, "4"},
  {"anticross", "window_lo", Type::number, "-3"},
  {"anticross", "window_hi", Type::number, "-1"},
  {"anticross", "grid_points", Type::integer, "41"},
  {"anticross", "tolerance", Type::number, "1e-5"},
  {"anticross", "dressed", Type::boolean, "true"},
  {"anticross", "dressed_steps", Type::integer, "100"},
  {"anticross", "fock_tolerance_mhz", Type::number, "0.1"},

  {"project", "states", Type::list, "3,4"},
  {"project", "labels", Type::list, "gg1,ee0,eg0,ge0"},
  {"project", "completeness_tolerance", Type::number, "1e-9"},

  {"oracle", "eps1", Type::number, "-2.4"},
  {"oracle", "eps2", Type::number, "-3.22"},
  {"oracle", "g", Type::number, "3.45"},
  {"oracle", "omega_r", Type::number, "5.15"},
  {"oracle", "n_cut", Type::integer, "50"},
  {"oracle", "per_sector", Type::integer, "8"},
  {"oracle", "spin_spin", Type::boolean, "false"},
  {"oracle", "tolerance", Type::number, "1e-9"},
  {"oracle", "amplitude_tolerance", Type::number, "1e-6"},

  {"fit", "data", Type::text, ""},
  {"fit", "synth_start", Type::number, "-4"},
  {"fit", "synth_stop", Type::number, "4"},
  {"fit", "synth_points", Type::integer, "41"},
  {"fit", "synth_lines", Type::list, "0-1,0-2,0-3,0-4,0-5,0-6,1-2"},
  {"fit", "noise_ghz", Type::number, "0"},
  {"fit", "seed", Type::integer, "1"},
  {"fit", "perturb", Type::number, "0.1"},
  {"fit", "n_cut", Type::integer, "20"},
  {"fit", "max_evals", Type::integer, "40000"},
  {"fit", "stages", Type::integer, "2"},
  {"fit", "check_recovery", Type::boolean, "true"},
  {"fit", "recovery_tolerance", Type::number, "0.01"},

  {"circuit", "q1_e_j", Type::number, "10"},
  {"circuit", "q1_e_c", Type::number, "1"},
  {"circuit", "q1_alpha", Type::number, "0.7"},
  {"circuit", "q1_beta", Type::number, "2"},
  {"circuit", "q1_phi_e", Type::number, "0.5"},
  {"circuit", "q2_e_j", Type::number, "10"},
  {"circuit", "q2_e_c", Type::number, "1"},
  {"circuit", "q2_alpha", Type::number, "0.7"},
  {"circuit", "q2_beta", Type::number, "2"},
  {"circuit", "q2_phi_e", Type::number, "0.5"},
  {"circuit", "e_lr", Type::number, "0.3"},
  {"circuit", "omega_r", Type::number, "1.3"},
  {"circuit", "n_charge", Type::integer, "7"},
  {"circuit", "n_levels", Type::integer, "4"},
  {"circuit", "n_cut", Type::integer, "20"},
  {"circuit", "convergence", Type::boolean, "true"},
};
// clang-format on

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string full_key(std::string_view section, std::string_view key) {
  return std::string(section) + "." + std::string(key);
}

const KeySpec* find_spec(std::string_view section, std::string_view key) {
  for (const auto& s : kSchema)
    if (s.section == section && s.key == key) return &s;
  return nullptr;
}

bool known_section(std::string_view section) {
  return std::any_of(std::begin(kSchema), std::end(kSchema),
                     [&](const KeySpec& s) { return s.section == section; });
}

bool parse_double(std::string_view s, double& v) {
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  return r.ec == std::errc() && r.ptr == s.data() + s.size();
}

bool parse_long(std::string_view s, long long& v) {
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  return r.ec == std::errc() && r.ptr == s.data() + s.size();
}

bool parse_bool(std::string_view s, bool& v) {
  if (s == "true" || s == "yes" || s == "1") return v = true, true;
  if (s == "false" || s == "no" || s == "0") return v = false, true;
  return false;
}

// Returns an empty string when the value fits the declared type.
std::string type_problem(const KeySpec& spec, const std::string& value) {
  switch (spec.type) {
    case Type::number: {
      double v;
      return parse_double(value, v) ? "" : "expects a number";
    }
    case Type::integer: {
      long long v;
      return parse_long(value, v) ? "" : "expects an integer";
    }
    case Type::boolean: {
      bool v;
      return parse_bool(value, v) ? "" : "expects true or false";
    }
    case Type::text: {
      if (spec.choices.empty()) return "";
      std::string_view rest = spec.choices;
      while (!rest.empty()) {
        const auto bar = rest.find('|');
        if (rest.substr(0, bar) == value) return "";
        if (bar == std::string_view::npos) break;
        rest.remove_prefix(bar + 1);
      }
      return "expects one of " + std::string(spec.choices);
    }
    case Type::list:
      return "";
  }
  return "";
}

}  // namespace

std::span<const KeySpec> schema() { return kSchema; }

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

Config Config::parse(std::string_view text, std::string source) {
  Config cfg;
  cfg.source_ = source;
  std::istringstream in{std::string(text)};
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    std::string s = trim(std::string_view(line).substr(0, hash));
    if (s.empty()) continue;
    const std::string at = source + ":" + std::to_string(lineno) + ": ";
    if (s.front() == '[') {
      if (s.back() != ']') fail(ErrorCode::config, at + "malformed section header '" + s + "'");
      section = trim(std::string_view(s).substr(1, s.size() - 2));
      if (!known_section(section)) fail(ErrorCode::config, at + "unknown section [" + section + "]");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail(ErrorCode::config, at + "expected key = value, got '" + s + "'");
    const std::string key = trim(std::string_view(s).substr(0, eq));
    const std::string value = trim(std::string_view(s).substr(eq + 1));
    if (section.empty()) fail(ErrorCode::config, at + "key '" + key + "' outside any section");
    const KeySpec* spec = find_spec(section, key);
    if (!spec) fail(ErrorCode::config, at + "unknown key '" + key + "' in [" + section + "]");
    if (cfg.values_.count(full_key(section, key)))
      fail(ErrorCode::config, at + "duplicate key '" + key + "' in [" + section + "]");
    if (auto problem = type_problem(*spec, value); !problem.empty())
      fail(ErrorCode::config, at + section + "." + key + " " + problem + ", got '" + value + "'");
    cfg.values_[full_key(section, key)] = {value, source + ":" + std::to_string(lineno)};
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  Config cfg = parse(io::read_file(path), path.string());
  cfg.base_dir_ = path.parent_path();
  return cfg;
}

void Config::set(std::string_view section, std::string_view key, std::string value) {
  const KeySpec* spec = find_spec(section, key);
  if (!spec)
    fail(ErrorCode::config, "override: unknown key '" + std::string(key) + "' in [" +
                                std::string(section) + "]");
  if (auto problem = type_problem(*spec, value); !problem.empty())
    fail(ErrorCode::config, "override: " + full_key(section, key) + " " + problem + ", got '" +
                                value + "'");
  values_[full_key(section, key)] = {std::move(value), "override"};
}

const std::string& Config::raw(std::string_view section, std::string_view key) const {
  const KeySpec* spec = find_spec(section, key);
  if (!spec) fail(ErrorCode::config, "undeclared key " + full_key(section, key));
  static thread_local std::string fallback;
  auto it = values_.find(full_key(section, key));
  if (it != values_.end()) return it->second.value;
  fallback = std::string(spec->fallback);
  return fallback;
}

std::string Config::where(std::string_view section, std::string_view key) const {
  auto it = values_.find(full_key(section, key));
  return it == values_.end() ? "default" : it->second.origin;
}

bool Config::is_set(std::string_view section, std::string_view key) const {
  return values_.count(full_key(section, key)) > 0;
}

double Config::number(std::string_view section, std::string_view key) const {
  double v = 0;
  if (!parse_double(raw(section, key), v))
    fail(ErrorCode::config, where(section, key) + ": " + full_key(section, key) + " is not a number");
  return v;
}

int Config::integer(std::string_view section, std::string_view key) const {
  long long v = 0;
  if (!parse_long(raw(section, key), v) || v < INT32_MIN || v > INT32_MAX)
    fail(ErrorCode::config, where(section, key) + ": " + full_key(section, key) + " is not an integer");
  return int(v);
}

std::uint64_t Config::unsigned_integer(std::string_view section, std::string_view key) const {
  long long v = 0;
  if (!parse_long(raw(section, key), v) || v < 0)
    fail(ErrorCode::config,
         where(section, key) + ": " + full_key(section, key) + " must be a non-negative integer");
  return std::uint64_t(v);
}

bool Config::boolean(std::string_view section, std::string_view key) const {
  bool v = false;
  if (!parse_bool(raw(section, key), v))
    fail(ErrorCode::config, where(section, key) + ": " + full_key(section, key) + " is not a boolean");
  return v;
}

std::string Config::text(std::string_view section, std::string_view key) const {
  return raw(section, key);
}

std::vector<std::string> Config::list(std::string_view section, std::string_view key) const {
  std::vector<std::string> out;
  std::string_view rest = raw(section, key);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    std::string item = trim(rest.substr(0, comma));
    if (!item.empty()) out.push_back(std::move(item));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

std::string Config::resolved() const {
  std::string out;
  std::string_view section;
  for (const auto& spec : kSchema) {
    if (spec.section != section) {
      if (!section.empty()) out += "\n";
      section = spec.section;
      out += "[" + std::string(section) + "]\n";
    }
    out += std::string(spec.key) + " = " + raw(spec.section, spec.key) + "\n";
  }
  return out;
}

std::string Config::digest() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(resolved())));
  return buf;
}

}  // namespace usc::config
