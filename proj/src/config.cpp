#include "qcost/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "qcost/constants.hpp"
#include "qcost/errors.hpp"

namespace qcost::cli {

namespace {

// ---------------------------------------------------------------------------
// Per-experiment parameter schema
// ---------------------------------------------------------------------------

struct ParamSpec {
  const char* name;
  double default_value;
  double lo;
  double hi;
  bool lo_inclusive;
  bool integer;
};

constexpr double kInf = 1e308;
constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kHalfPi = 1.5707963267948966;

// Shared specs.  nu's open interval (0, sqrt(2)) is the trap-geometry
// constraint; bures grids must stay inside (0, pi/2).
constexpr ParamSpec kDelta{"delta", 1.0, 0.0, kInf, false, false};
constexpr ParamSpec kMu{"mu", bohr_magneton, 0.0, kInf, false, false};
constexpr ParamSpec kNu{"nu", 0.5, 0.0, kSqrt2, false, false};

const std::vector<ParamSpec>& schema_for(Experiment experiment) {
  static const std::vector<ParamSpec> lz_sweep_tau = {
      kDelta,
      {"g0", 0.2, 0.0, kInf, false, false},
      kMu,
      {"tau_lo", 0.05, 0.0, kInf, false, false},
      {"tau_hi", 50.0, 0.0, kInf, false, false},
      {"points", 200.0, 2.0, 1e9, true, true},
  };
  static const std::vector<ParamSpec> lz_sweep_bures = {
      kDelta,
      kMu,
      {"tau", 1.0, 0.0, kInf, false, false},
      {"bures_lo", 0.05, 0.0, kHalfPi, false, false},
      {"bures_hi", 1.45, 0.0, kHalfPi, false, false},
      {"points", 57.0, 2.0, 1e9, true, true},
  };
  static const std::vector<ParamSpec> penning_sweep_eta = {
      {"c", 4.0 / 3.0, 0.0, kInf, false, false},
      kNu,
      {"eta_lo", 0.0, 0.0, kInf, true, false},  // 0 = start at the realizability edge
      {"eta_hi", 6.0, 0.0, kInf, false, false},
      {"points", 120.0, 2.0, 1e9, true, true},
      {"grid", 100000.0, 1000.0, 1e9, true, true},
  };
  static const std::vector<ParamSpec> penning_sweep_bures = {
      {"eta", 1.0, 0.0, kInf, false, false},
      kNu,
      {"bures_lo", 0.05, 0.0, kHalfPi, false, false},
      {"bures_hi", 0.6, 0.0, kHalfPi, false, false},
      {"points", 56.0, 2.0, 1e9, true, true},
  };
  static const std::vector<ParamSpec> circuit_validate = {
      {"R", 1.0, 0.0, kInf, false, false},
      {"L", 1e-3, 0.0, kInf, false, false},
      {"T", 300.0, 0.0, kInf, false, false},
      {"A", 1e-3, 0.0, kInf, false, false},
      {"amp", 1e-6, 0.0, kInf, false, false},
      {"tau", 0.02, 0.0, kInf, false, false},
      {"dt", 0.0, 0.0, kInf, true, false},  // 0 = (2L/R)/100
      {"n_traj", 10000.0, 2.0, 1e9, true, true},
      {"sample_every", 2.0, 1.0, 1e9, true, true},
  };

  switch (experiment) {
    case Experiment::LzSweepTau: return lz_sweep_tau;
    case Experiment::LzSweepBures: return lz_sweep_bures;
    case Experiment::PenningSweepEta: return penning_sweep_eta;
    case Experiment::PenningSweepBures: return penning_sweep_bures;
    case Experiment::CircuitValidate: return circuit_validate;
  }
  throw ConfigError("unknown experiment enum value");
}

// ---------------------------------------------------------------------------
// Tokenization
// ---------------------------------------------------------------------------

struct Entry {
  std::string key;
  std::string value;
  int line;  // 0 = command-line override
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::string location(int line) {
  return line == 0 ? std::string("command line") : "line " + std::to_string(line);
}

std::vector<Entry> tokenize(const std::string& text) {
  std::vector<Entry> entries;
  std::istringstream stream(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      // Section headers are grouping sugar only; keys stay flat.
      if (line.back() != ']' || line.size() < 3) {
        throw ConfigError("malformed section header at " + location(line_no));
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("expected key=value at " + location(line_no));
    }
    const std::string key{trim(line.substr(0, eq))};
    const std::string value{trim(line.substr(eq + 1))};
    if (key.empty()) throw ConfigError("empty key at " + location(line_no));
    if (value.empty()) throw ConfigError("empty value for key '" + key + "' at " + location(line_no));
    entries.push_back({key, value, line_no});
  }
  return entries;
}

// ---------------------------------------------------------------------------
// Typed value parsing
// ---------------------------------------------------------------------------

double parse_number(const Entry& entry) {
  const char* first = entry.value.data();
  const char* last = first + entry.value.size();
  double out = 0.0;
  const auto result = std::from_chars(first, last, out);
  if (result.ec != std::errc{} || result.ptr != last) {
    throw ConfigError("malformed number '" + entry.value + "' for key '" + entry.key + "' at " +
                      location(entry.line));
  }
  return out;
}

bool parse_bool(const Entry& entry) {
  if (entry.value == "true" || entry.value == "1") return true;
  if (entry.value == "false" || entry.value == "0") return false;
  throw ConfigError("malformed flag '" + entry.value + "' for key '" + entry.key +
                    "' (expected true/false) at " + location(entry.line));
}

std::uint64_t parse_seed(const Entry& entry) {
  const char* first = entry.value.data();
  const char* last = first + entry.value.size();
  std::uint64_t out = 0;
  const auto result = std::from_chars(first, last, out);
  if (result.ec != std::errc{} || result.ptr != last) {
    throw ConfigError("malformed seed '" + entry.value + "' at " + location(entry.line));
  }
  return out;
}

double validate_param(const ParamSpec& spec, double value, const Entry& entry) {
  const bool above_lo = spec.lo_inclusive ? value >= spec.lo : value > spec.lo;
  if (!above_lo || !(value < spec.hi)) {
    std::ostringstream msg;
    msg << "value " << value << " for key '" << entry.key << "' out of range "
        << (spec.lo_inclusive ? '[' : '(') << spec.lo << ", " << spec.hi << ") at "
        << location(entry.line);
    throw ConfigError(msg.str());
  }
  if (spec.integer && value != std::floor(value)) {
    throw ConfigError("key '" + entry.key + "' must be an integer, got '" + entry.value +
                      "' at " + location(entry.line));
  }
  return value;
}

void check_ordered(const RunConfig& config, const char* lo_key, const char* hi_key) {
  if (config.params.count(lo_key) && !(config.param(lo_key) < config.param(hi_key))) {
    throw ConfigError(std::string("need ") + lo_key + " < " + hi_key);
  }
}

}  // namespace

std::string to_string(Experiment experiment) {
  switch (experiment) {
    case Experiment::LzSweepTau: return "lz-sweep-tau";
    case Experiment::LzSweepBures: return "lz-sweep-bures";
    case Experiment::PenningSweepEta: return "penning-sweep-eta";
    case Experiment::PenningSweepBures: return "penning-sweep-bures";
    case Experiment::CircuitValidate: return "circuit-validate";
  }
  return "unknown";
}

std::optional<Experiment> experiment_from_string(std::string_view name) {
  if (name == "lz-sweep-tau") return Experiment::LzSweepTau;
  if (name == "lz-sweep-bures") return Experiment::LzSweepBures;
  if (name == "penning-sweep-eta") return Experiment::PenningSweepEta;
  if (name == "penning-sweep-bures") return Experiment::PenningSweepBures;
  if (name == "circuit-validate") return Experiment::CircuitValidate;
  return std::nullopt;
}

double RunConfig::param(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) throw ConfigError("internal: unknown parameter '" + key + "'");
  return it->second;
}

RunConfig parse_config(const std::string& text) { return parse_config(text, {}); }

RunConfig parse_config(const std::string& text,
                       const std::vector<std::pair<std::string, std::string>>& overrides) {
  std::vector<Entry> entries = tokenize(text);

  // Duplicates are only an error within the file; an override replaces.
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      if (entries[i].key == entries[j].key) {
        throw ConfigError("duplicate key '" + entries[i].key + "' at " +
                          location(entries[i].line) + " and " + location(entries[j].line));
      }
    }
  }
  for (const auto& [key, value] : overrides) {
    if (key == "experiment") {
      // The experiment selects the schema, so it cannot be silently swapped:
      // a command-line experiment must agree with one named in the file.
      const auto prior = std::find_if(entries.begin(), entries.end(),
                                      [](const Entry& e) { return e.key == "experiment"; });
      if (prior != entries.end() && prior->value != value) {
        throw ConfigError("experiment '" + value + "' from the command line conflicts with '" +
                          prior->value + "' at " + location(prior->line));
      }
    }
    std::erase_if(entries, [&key](const Entry& e) { return e.key == key; });
    entries.push_back({key, value, 0});
  }

  // The experiment key selects the schema, so resolve it first.
  const auto experiment_it =
      std::find_if(entries.begin(), entries.end(), [](const Entry& e) { return e.key == "experiment"; });
  if (experiment_it == entries.end()) throw ConfigError("missing key: experiment");
  const auto experiment = experiment_from_string(experiment_it->value);
  if (!experiment) {
    throw ConfigError("unknown experiment '" + experiment_it->value + "' at " +
                      location(experiment_it->line));
  }

  RunConfig config;
  config.experiment = *experiment;
  config.output_path = to_string(*experiment) + ".csv";
  const auto& schema = schema_for(*experiment);
  for (const auto& spec : schema) config.params[spec.name] = spec.default_value;

  for (const auto& entry : entries) {
    if (entry.key == "experiment") continue;
    if (entry.key == "out") {
      config.output_path = entry.value;
      continue;
    }
    if (entry.key == "svg") {
      config.emit_svg = parse_bool(entry);
      continue;
    }
    if (entry.key == "seed") {
      config.seed = parse_seed(entry);
      continue;
    }
    const auto spec = std::find_if(schema.begin(), schema.end(),
                                   [&entry](const ParamSpec& s) { return entry.key == s.name; });
    if (spec == schema.end()) {
      throw ConfigError("unknown key '" + entry.key + "' for experiment " +
                        to_string(*experiment) + " at " + location(entry.line));
    }
    config.params[spec->name] = validate_param(*spec, parse_number(entry), entry);
  }

  check_ordered(config, "tau_lo", "tau_hi");
  check_ordered(config, "bures_lo", "bures_hi");
  if (config.experiment == Experiment::PenningSweepEta && config.param("eta_lo") > 0.0 &&
      !(config.param("eta_lo") < config.param("eta_hi"))) {
    throw ConfigError("need eta_lo < eta_hi");
  }
  return config;
}

}  // namespace qcost::cli
