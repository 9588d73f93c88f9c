#include "cascade/scenario.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

#include "cascade/csv.hpp"
#include "cascade/evolve.hpp"
#include "cascade/liouvillian.hpp"
#include "cascade/operators.hpp"
#include "cascade/rate_table.hpp"
#include "cascade/transport.hpp"
#include "cascade/version.hpp"

namespace cascade {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr double default_drive = 1.5;
constexpr double unit_bound_slack = 1e-9;

// Config parsing is strict: every key is checked against a whitelist and
// every error names the offending field path, so a typo never silently
// falls back to a default.

std::string join_path(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void reject_unknown_keys(const json& obj, const std::string& prefix,
                         std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed)
      if (item.key() == key) {
        known = true;
        break;
      }
    if (!known) throw ConfigError("unknown field " + join_path(prefix, item.key()));
  }
}

const json& require_field(const json& obj, const std::string& prefix, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError("missing field " + join_path(prefix, key));
  return *it;
}

void forbid_field(const json& obj, const std::string& prefix, const char* key,
                  const std::string& reason) {
  if (obj.contains(key))
    throw ConfigError("field " + join_path(prefix, key) + " does not apply: " + reason);
}

double number_field(const json& value, const std::string& path) {
  if (!value.is_number()) throw ConfigError("field " + path + " must be a number");
  return value.get<double>();
}

int int_field(const json& value, const std::string& path) {
  if (!value.is_number_integer()) throw ConfigError("field " + path + " must be an integer");
  return value.get<int>();
}

std::string string_field(const json& value, const std::string& path) {
  if (!value.is_string()) throw ConfigError("field " + path + " must be a string");
  return value.get<std::string>();
}

bool bool_field(const json& value, const std::string& path) {
  if (!value.is_boolean()) throw ConfigError("field " + path + " must be a boolean");
  return value.get<bool>();
}

const json& object_field(const json& value, const std::string& path) {
  if (!value.is_object()) throw ConfigError("field " + path + " must be an object");
  return value;
}

ScenarioKind parse_scenario_kind(const std::string& name) {
  if (name == "populations") return ScenarioKind::populations;
  if (name == "efficiency_dynamics") return ScenarioKind::efficiency_dynamics;
  if (name == "bias_compare") return ScenarioKind::bias_compare;
  if (name == "step_scan") return ScenarioKind::step_scan;
  if (name == "length_scan") return ScenarioKind::length_scan;
  if (name == "gamma12_scan") return ScenarioKind::gamma12_scan;
  if (name == "phi_scan") return ScenarioKind::phi_scan;
  throw ConfigError(
      "field scenario must be one of populations, efficiency_dynamics, bias_compare, "
      "step_scan, length_scan, gamma12_scan, phi_scan (got \"" +
      name + "\")");
}

CouplingMode parse_mode(const std::string& name, const std::string& path) {
  if (name == "unidirectional") return CouplingMode::unidirectional;
  if (name == "reciprocal") return CouplingMode::reciprocal;
  throw ConfigError("field " + path + " must be \"unidirectional\" or \"reciprocal\" (got \"" +
                    name + "\")");
}

BiasDirection parse_bias(const std::string& name, const std::string& path) {
  if (name == "downstream") return BiasDirection::downstream;
  if (name == "upstream") return BiasDirection::upstream;
  throw ConfigError("field " + path + " must be \"downstream\" or \"upstream\" (got \"" + name +
                    "\")");
}

bool uses_trajectory(ScenarioKind kind) {
  return kind == ScenarioKind::populations || kind == ScenarioKind::efficiency_dynamics;
}

ScanParameter scan_parameter_for(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::step_scan: return ScanParameter::chain_step;
    case ScenarioKind::length_scan: return ScanParameter::n_atoms;
    case ScenarioKind::gamma12_scan: return ScanParameter::gamma12_ratio;
    case ScenarioKind::phi_scan: return ScanParameter::phi;
    default: throw std::logic_error("not a scan scenario");
  }
}

void parse_chain(const json& root, ScenarioConfig& config) {
  const json& chain = object_field(require_field(root, "", "chain"), "chain");
  reject_unknown_keys(chain, "chain", {"n_atoms", "omega0", "step", "dipole_note"});

  if (config.scenario == ScenarioKind::length_scan) {
    forbid_field(chain, "chain", "n_atoms", "the length_scan grid sets the chain length");
    config.chain.n_atoms = 2;  // placeholder, overridden per grid point
  } else {
    config.chain.n_atoms = int_field(require_field(chain, "chain", "n_atoms"), "chain.n_atoms");
  }
  if (config.scenario == ScenarioKind::step_scan)
    forbid_field(chain, "chain", "step", "the step_scan grid sets the spacing");

  if (const auto it = chain.find("omega0"); it != chain.end())
    config.chain.omega0 = number_field(*it, "chain.omega0");
  if (const auto it = chain.find("step"); it != chain.end())
    config.chain.step = number_field(*it, "chain.step");
  if (const auto it = chain.find("dipole_note"); it != chain.end())
    config.chain.dipole_note = string_field(*it, "chain.dipole_note");

  try {
    config.chain.validate();
  } catch (const std::invalid_argument& err) {
    throw ConfigError(err.what());
  }
}

void parse_environment(const json& root, ScenarioConfig& config) {
  const ScenarioKind kind = config.scenario;
  const json& env = object_field(require_field(root, "", "environment"), "environment");
  reject_unknown_keys(env, "environment", {"model", "mode", "rate_table"});

  const bool has_model = env.contains("model");
  const bool has_table = env.contains("rate_table");
  if (has_model == has_table)
    throw ConfigError(
        "environment must set exactly one of environment.model and environment.rate_table");

  if (has_table) {
    if (is_scan_scenario(kind))
      throw ConfigError(to_string(kind) +
                        " builds its rates per grid point and needs environment.model, "
                        "not environment.rate_table");
    forbid_field(env, "environment", "mode", "the rate-table header fixes the mode");
    config.environment.rate_table =
        std::filesystem::path(string_field(env.at("rate_table"), "environment.rate_table"));
    return;
  }

  const json& model = object_field(env.at("model"), "environment.model");
  const std::string model_kind =
      string_field(require_field(model, "environment.model", "kind"), "environment.model.kind");

  if (model_kind == "quadrature") {
    if (kind == ScenarioKind::step_scan || kind == ScenarioKind::length_scan)
      throw ConfigError("field environment.model.kind must be \"spp_chain\" for " +
                        to_string(kind));
    reject_unknown_keys(model, "environment.model", {"kind", "X", "phi", "gamma_local"});
    QuadratureModel q;
    if (kind == ScenarioKind::gamma12_scan) {
      forbid_field(model, "environment.model", "X",
                   "the gamma12_scan grid sets the coupling ratio");
      forbid_field(model, "environment.model", "phi",
                   "the gamma12_scan construction fixes the phase at pi/2");
    } else {
      q.X = number_field(require_field(model, "environment.model", "X"), "environment.model.X");
      if (kind == ScenarioKind::phi_scan)
        forbid_field(model, "environment.model", "phi", "the phi_scan grid sets the phase");
      else if (const auto it = model.find("phi"); it != model.end())
        q.phi = number_field(*it, "environment.model.phi");
    }
    if (const auto it = model.find("gamma_local"); it != model.end())
      q.gamma_local = number_field(*it, "environment.model.gamma_local");
    config.environment.model = q;
  } else if (model_kind == "spp_chain") {
    if (kind == ScenarioKind::gamma12_scan || kind == ScenarioKind::phi_scan)
      throw ConfigError("field environment.model.kind must be \"quadrature\" for " +
                        to_string(kind));
    reject_unknown_keys(model, "environment.model",
                        {"kind", "gamma_local", "decay_length", "wavenumber", "direction"});
    SppChainModel c;
    if (const auto it = model.find("gamma_local"); it != model.end())
      c.gamma_local = number_field(*it, "environment.model.gamma_local");
    if (const auto it = model.find("decay_length"); it != model.end())
      c.decay_length = number_field(*it, "environment.model.decay_length");
    if (const auto it = model.find("wavenumber"); it != model.end())
      c.wavenumber = number_field(*it, "environment.model.wavenumber");
    if (const auto it = model.find("direction"); it != model.end())
      c.direction = parse_bias(string_field(*it, "environment.model.direction"),
                               "environment.model.direction");
    config.environment.model = c;
  } else {
    throw ConfigError(
        "field environment.model.kind must be \"quadrature\" or \"spp_chain\" (got \"" +
        model_kind + "\")");
  }

  if (const auto it = env.find("mode"); it != env.end())
    config.environment.mode = parse_mode(string_field(*it, "environment.mode"), "environment.mode");
}

void parse_drive(const json& root, ScenarioConfig& config) {
  const auto it = root.find("drive");
  if (it == root.end()) return;
  const json& drive = object_field(*it, "drive");
  reject_unknown_keys(drive, "drive", {"gamma_in", "gamma_out"});
  if (const auto f = drive.find("gamma_in"); f != drive.end()) {
    const double value = number_field(*f, "drive.gamma_in");
    if (value < 0.0) throw ConfigError("field drive.gamma_in must be >= 0");
    config.gamma_in = value;
  }
  if (const auto f = drive.find("gamma_out"); f != drive.end()) {
    const double value = number_field(*f, "drive.gamma_out");
    if (value < 0.0) throw ConfigError("field drive.gamma_out must be >= 0");
    config.gamma_out = value;
  }
}

void parse_time(const json& root, ScenarioConfig& config) {
  const auto it = root.find("time");
  if (it == root.end()) return;
  if (!uses_trajectory(config.scenario))
    throw ConfigError("field time does not apply: " + to_string(config.scenario) +
                      " has no time evolution");
  const json& time = object_field(*it, "time");
  reject_unknown_keys(time, "time", {"t_end", "samples"});
  if (const auto f = time.find("t_end"); f != time.end()) {
    config.t_end = number_field(*f, "time.t_end");
    if (!(config.t_end > 0.0)) throw ConfigError("field time.t_end must be > 0");
  }
  if (const auto f = time.find("samples"); f != time.end()) {
    config.samples = int_field(*f, "time.samples");
    if (config.samples < 2) throw ConfigError("field time.samples must be at least 2");
  }
}

void parse_grid(const json& root, ScenarioConfig& config) {
  const auto it = root.find("grid");
  if (it == root.end()) return;
  if (!is_scan_scenario(config.scenario))
    throw ConfigError("field grid does not apply: " + to_string(config.scenario) +
                      " is not a scan");
  const json& grid = object_field(*it, "grid");
  reject_unknown_keys(grid, "grid", {"start", "stop", "points", "values"});

  const bool has_values = grid.contains("values");
  const bool has_range =
      grid.contains("start") || grid.contains("stop") || grid.contains("points");
  if (has_values == has_range)
    throw ConfigError("field grid must give either {start, stop, points} or {values}");

  std::vector<double> values;
  if (has_values) {
    const json& array = grid.at("values");
    if (!array.is_array() || array.empty())
      throw ConfigError("field grid.values must be a non-empty array of numbers");
    values.reserve(array.size());
    for (size_t k = 0; k < array.size(); ++k)
      values.push_back(number_field(array[k], "grid.values[" + std::to_string(k) + "]"));
  } else {
    const double start = number_field(require_field(grid, "grid", "start"), "grid.start");
    const double stop = number_field(require_field(grid, "grid", "stop"), "grid.stop");
    const int points = int_field(require_field(grid, "grid", "points"), "grid.points");
    if (points < 1) throw ConfigError("field grid.points must be at least 1");
    if (points > 1 && !(stop > start))
      throw ConfigError("field grid.stop must exceed grid.start");
    values.resize(static_cast<size_t>(points));
    for (int k = 0; k < points; ++k)
      values[static_cast<size_t>(k)] =
          start + (stop - start) * (static_cast<double>(k) / static_cast<double>(points - 1));
    if (points > 1) values.back() = stop;
    else values[0] = start;
  }
  config.grid = std::move(values);
}

void parse_initial_state(const json& root, ScenarioConfig& config) {
  const auto it = root.find("initial_state");
  if (it == root.end()) return;
  if (!uses_trajectory(config.scenario))
    throw ConfigError("field initial_state does not apply: " + to_string(config.scenario) +
                      " has no time evolution");
  config.initial_state = string_field(*it, "initial_state");
  for (char c : config.initial_state)
    if (c != 'g' && c != 'e')
      throw ConfigError("field initial_state must contain only 'g' and 'e' characters");
  if (static_cast<int>(config.initial_state.size()) != config.chain.n_atoms)
    throw ConfigError("field initial_state has " + std::to_string(config.initial_state.size()) +
                      " letters for a chain of " + std::to_string(config.chain.n_atoms) +
                      " atoms");
}

void check_scenario_limits(const ScenarioConfig& config) {
  const int n = config.chain.n_atoms;
  switch (config.scenario) {
    case ScenarioKind::populations:
    case ScenarioKind::efficiency_dynamics:
      if (n > 12)
        throw ConfigError("field chain.n_atoms must be at most 12 for " +
                          to_string(config.scenario));
      break;
    case ScenarioKind::bias_compare:
    case ScenarioKind::step_scan:
      if (n > 7)
        throw ConfigError("field chain.n_atoms must be at most 7 for " +
                          to_string(config.scenario) + " (each point solves a steady state)");
      break;
    case ScenarioKind::gamma12_scan:
    case ScenarioKind::phi_scan:
      if (n != 2)
        throw ConfigError("field chain.n_atoms must be 2 for " + to_string(config.scenario));
      break;
    case ScenarioKind::length_scan:
      break;
  }
  if (config.drop_hamiltonian && is_scan_scenario(config.scenario))
    throw ConfigError("field drop_hamiltonian does not apply to scans");
  if (config.scenario == ScenarioKind::bias_compare && config.environment.model &&
      config.environment.mode != CouplingMode::unidirectional)
    throw ConfigError("bias_compare needs a unidirectional environment");
}

ScenarioConfig parse_config(const json& root) {
  reject_unknown_keys(root, "",
                      {"schema", "scenario", "chain", "environment", "initial_state", "drive",
                       "time", "grid", "output", "drop_hamiltonian"});

  const int schema = int_field(require_field(root, "", "schema"), "schema");
  if (schema != 1)
    throw ConfigError("unsupported schema version " + std::to_string(schema) +
                      " (this build reads schema 1)");

  ScenarioConfig config;
  config.scenario =
      parse_scenario_kind(string_field(require_field(root, "", "scenario"), "scenario"));

  parse_chain(root, config);
  parse_environment(root, config);
  parse_initial_state(root, config);
  parse_drive(root, config);
  parse_time(root, config);
  parse_grid(root, config);

  if (const auto it = root.find("output"); it != root.end())
    config.output = std::filesystem::path(string_field(*it, "output"));
  if (const auto it = root.find("drop_hamiltonian"); it != root.end())
    config.drop_hamiltonian = bool_field(*it, "drop_hamiltonian");

  check_scenario_limits(config);
  return config;
}

std::vector<double> arithmetic_grid(double start, double spacing, int count) {
  std::vector<double> grid(static_cast<size_t>(count));
  for (int k = 0; k < count; ++k) grid[static_cast<size_t>(k)] = start + spacing * k;
  return grid;
}

// Default grids mirror the run matrices the scenarios were built for. The
// reciprocal coupling sweep stops at ratio 1 where the rate matrix stops
// being positive semidefinite; the unidirectional sweep continues into the
// amplifying regime (those points carry warnings).
std::vector<double> default_grid(ScenarioKind kind, CouplingMode mode) {
  switch (kind) {
    case ScenarioKind::gamma12_scan:
      return arithmetic_grid(0.1, 0.1, mode == CouplingMode::unidirectional ? 20 : 10);
    case ScenarioKind::phi_scan: return arithmetic_grid(0.0, std::numbers::pi / 8.0, 17);
    case ScenarioKind::step_scan: return arithmetic_grid(0.1, 0.1, 60);
    case ScenarioKind::length_scan: return {2.0, 3.0, 4.0, 5.0, 6.0};
    default: throw std::logic_error("not a scan scenario");
  }
}

std::vector<double> time_grid(double t_end, int samples) {
  std::vector<double> times(static_cast<size_t>(samples));
  for (int k = 0; k < samples; ++k)
    times[static_cast<size_t>(k)] =
        t_end * (static_cast<double>(k) / static_cast<double>(samples - 1));
  return times;
}

std::string resolved_initial_state(const ScenarioConfig& config) {
  return config.initial_state.empty()
             ? std::string(static_cast<size_t>(config.chain.n_atoms), 'g')
             : config.initial_state;
}

ordered_json model_json(const std::variant<QuadratureModel, SppChainModel>& model,
                        ScenarioKind kind) {
  ordered_json j;
  if (const auto* q = std::get_if<QuadratureModel>(&model)) {
    j["kind"] = "quadrature";
    if (kind != ScenarioKind::gamma12_scan) j["X"] = q->X;
    if (kind != ScenarioKind::gamma12_scan && kind != ScenarioKind::phi_scan) j["phi"] = q->phi;
    j["gamma_local"] = q->gamma_local;
  } else {
    const auto& c = std::get<SppChainModel>(model);
    j["kind"] = "spp_chain";
    j["gamma_local"] = c.gamma_local;
    j["decay_length"] = c.decay_length;
    j["wavenumber"] = c.wavenumber;
    j["direction"] = to_string(c.direction);
  }
  return j;
}

ordered_json rates_json(const RateSet& rates) {
  ordered_json j;
  j["n_atoms"] = rates.n_atoms;
  j["mode"] = to_string(rates.mode);
  if (rates.mode == CouplingMode::unidirectional) j["bias"] = to_string(rates.bias);
  j["gamma_in"] = rates.gamma_in;
  j["gamma_out"] = rates.gamma_out;
  ordered_json gamma = ordered_json::array();
  ordered_json g = ordered_json::array();
  for (int i = 0; i < rates.n_atoms; ++i) {
    ordered_json gamma_row = ordered_json::array();
    ordered_json g_row = ordered_json::array();
    for (int k = 0; k < rates.n_atoms; ++k) {
      gamma_row.push_back(rates.gamma(i, k));
      g_row.push_back(rates.g(i, k));
    }
    gamma.push_back(std::move(gamma_row));
    g.push_back(std::move(g_row));
  }
  j["gamma"] = std::move(gamma);
  j["g"] = std::move(g);
  return j;
}

ordered_json resolved_config_json(const ScenarioConfig& config,
                                  const std::filesystem::path& out_dir, double gamma_in,
                                  double gamma_out) {
  const ScenarioKind kind = config.scenario;
  ordered_json j;
  j["schema"] = 1;
  j["scenario"] = to_string(kind);
  ordered_json chain;
  if (kind != ScenarioKind::length_scan) chain["n_atoms"] = config.chain.n_atoms;
  chain["omega0"] = config.chain.omega0;
  if (kind != ScenarioKind::step_scan) chain["step"] = config.chain.step;
  if (!config.chain.dipole_note.empty()) chain["dipole_note"] = config.chain.dipole_note;
  j["chain"] = std::move(chain);
  ordered_json env;
  if (config.environment.rate_table) {
    env["rate_table"] = config.environment.rate_table->string();
  } else {
    env["model"] = model_json(*config.environment.model, kind);
    env["mode"] = to_string(config.environment.mode);
  }
  j["environment"] = std::move(env);
  if (uses_trajectory(kind)) j["initial_state"] = resolved_initial_state(config);
  j["drive"]["gamma_in"] = gamma_in;
  j["drive"]["gamma_out"] = gamma_out;
  if (uses_trajectory(kind)) {
    j["time"]["t_end"] = config.t_end;
    j["time"]["samples"] = config.samples;
  }
  j["output"] = out_dir.string();
  j["drop_hamiltonian"] = config.drop_hamiltonian;
  return j;
}

std::string construction_note(ScenarioKind kind, CouplingMode mode) {
  switch (kind) {
    case ScenarioKind::gamma12_scan:
      if (mode == CouplingMode::unidirectional)
        return "per point: reciprocal quadrature parent at phi = pi/2 with gamma12 = "
               "ratio * gamma_local, then two-atom unidirectionalization (back-action "
               "zeroed, local decays halved)";
      return "per point: reciprocal quadrature set at phi = pi/2 with gamma12 = "
             "ratio * gamma_local";
    case ScenarioKind::phi_scan:
      return "per point: quadrature set at the grid phase, fixed X";
    case ScenarioKind::step_scan:
      return "per point: chain rate set at the grid spacing";
    case ScenarioKind::length_scan:
      return "per point: chain rate set at the grid chain length, fixed spacing";
    default: throw std::logic_error("not a scan scenario");
  }
}

std::vector<std::string> direction_warnings(const RateSet& rates, double chi) {
  std::vector<std::string> notes = validate_rates(rates, rates.mode);
  if (chi < -unit_bound_slack || chi > 1.0 + unit_bound_slack)
    notes.push_back("chi outside the unit transport bound: " + format_double(chi));
  return notes;
}

void write_manifest(const std::filesystem::path& path, const ordered_json& manifest) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << manifest.dump(2) << '\n';
  out.flush();
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

}  // namespace

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::populations: return "populations";
    case ScenarioKind::efficiency_dynamics: return "efficiency_dynamics";
    case ScenarioKind::bias_compare: return "bias_compare";
    case ScenarioKind::step_scan: return "step_scan";
    case ScenarioKind::length_scan: return "length_scan";
    case ScenarioKind::gamma12_scan: return "gamma12_scan";
    case ScenarioKind::phi_scan: return "phi_scan";
  }
  throw std::invalid_argument("unknown scenario kind");
}

bool is_scan_scenario(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::step_scan:
    case ScenarioKind::length_scan:
    case ScenarioKind::gamma12_scan:
    case ScenarioKind::phi_scan: return true;
    default: return false;
  }
}

ScenarioConfig load_scenario_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json root;
  try {
    root = json::parse(in);
  } catch (const json::exception& err) {
    throw ParseError(path.string() + ": " + err.what());
  }
  if (!root.is_object())
    throw ParseError(path.string() + ": config root must be a JSON object");
  return parse_config(root);
}

RateSet resolve_environment(const ScenarioConfig& config) {
  const EnvironmentChoice& env = config.environment;
  if (env.rate_table) {
    RateSet rates = load_rate_table(*env.rate_table);
    if (rates.n_atoms != config.chain.n_atoms)
      throw ConfigError("rate table " + env.rate_table->string() + " is for " +
                        std::to_string(rates.n_atoms) + " atoms but chain.n_atoms is " +
                        std::to_string(config.chain.n_atoms));
    if (config.gamma_in) rates.gamma_in = *config.gamma_in;
    if (config.gamma_out) rates.gamma_out = *config.gamma_out;
    return rates;
  }
  if (!env.model)
    throw ConfigError(
        "environment must set exactly one of environment.model and environment.rate_table");

  const double gamma_in = config.gamma_in.value_or(default_drive);
  const double gamma_out = config.gamma_out.value_or(default_drive);
  if (const auto* q = std::get_if<QuadratureModel>(&*env.model)) {
    if (config.chain.n_atoms != 2)
      throw ConfigError("the quadrature model describes a two-atom chain but chain.n_atoms is " +
                        std::to_string(config.chain.n_atoms));
    return quadrature_rate_set(*q, env.mode, gamma_in, gamma_out);
  }
  return spp_chain_rate_set(config.chain, std::get<SppChainModel>(*env.model), env.mode,
                            gamma_in, gamma_out);
}

void run_scenario(const ScenarioConfig& config, const RunOptions& options) {
  config.chain.validate();
  const ScenarioKind kind = config.scenario;
  const std::filesystem::path out_dir = options.output_dir.value_or(config.output);
  {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
      throw ConfigError("cannot create output directory " + out_dir.string() + ": " +
                        ec.message());
  }
  const bool include_h = !config.drop_hamiltonian;

  ordered_json manifest;
  manifest["artifact"]["name"] = artifact_name;
  manifest["artifact"]["version"] = artifact_version;
  std::vector<std::string> outputs;

  switch (kind) {
    case ScenarioKind::populations: {
      const RateSet rates = resolve_environment(config);
      const std::string initial = resolved_initial_state(config);
      const std::vector<double> times = time_grid(config.t_end, config.samples);
      const DenseMatrix rho0 = basis_state(initial);
      const Trajectory traj =
          config.chain.n_atoms <= 7
              ? evolve(build_liouvillian(config.chain, rates, include_h), rho0, times)
              : evolve(MatrixFreeLiouvillian(config.chain, rates, include_h), rho0, times);
      std::vector<RealVector> populations;
      populations.reserve(traj.states.size());
      for (const DenseMatrix& state : traj.states)
        populations.push_back(excited_populations(state));
      write_populations_csv(out_dir / "populations.csv", times, populations);
      outputs.push_back("populations.csv");
      manifest["config"] =
          resolved_config_json(config, out_dir, rates.gamma_in, rates.gamma_out);
      manifest["rates"] = rates_json(rates);
      break;
    }
    case ScenarioKind::efficiency_dynamics: {
      const RateSet rates = resolve_environment(config);
      const std::string initial = resolved_initial_state(config);
      const std::vector<double> times = time_grid(config.t_end, config.samples);
      const EfficiencyTrace trace = efficiency_trace(config.chain, rates, basis_state(initial),
                                                     times, {}, include_h);
      write_efficiency_csv(out_dir / "efficiency.csv", trace);
      outputs.push_back("efficiency.csv");
      manifest["config"] =
          resolved_config_json(config, out_dir, rates.gamma_in, rates.gamma_out);
      manifest["rates"] = rates_json(rates);
      break;
    }
    case ScenarioKind::bias_compare: {
      const RateSet rates = resolve_environment(config);
      if (rates.mode != CouplingMode::unidirectional)
        throw ConfigError("bias_compare needs a unidirectional environment");
      const RateSet reversed = reverse_bias(rates);
      const double chi_forward = stationary_efficiency(config.chain, rates, include_h);
      const double chi_reversed = stationary_efficiency(config.chain, reversed, include_h);
      const std::vector<std::string> directions = {to_string(rates.bias),
                                                   to_string(reversed.bias)};
      const std::vector<double> chi = {chi_forward, chi_reversed};
      const std::vector<std::vector<std::string>> warnings = {
          direction_warnings(rates, chi_forward), direction_warnings(reversed, chi_reversed)};
      write_bias_compare_csv(out_dir / "bias_compare.csv", directions, chi, warnings);
      outputs.push_back("bias_compare.csv");
      manifest["config"] =
          resolved_config_json(config, out_dir, rates.gamma_in, rates.gamma_out);
      manifest["rates"] = rates_json(rates);
      manifest["rates_reversed"] = rates_json(reversed);
      break;
    }
    case ScenarioKind::step_scan:
    case ScenarioKind::length_scan:
    case ScenarioKind::gamma12_scan:
    case ScenarioKind::phi_scan: {
      ScanConfig base;
      base.chain = config.chain;
      base.mode = config.environment.mode;
      base.model = *config.environment.model;
      base.gamma_in = config.gamma_in.value_or(default_drive);
      base.gamma_out = config.gamma_out.value_or(default_drive);
      const std::vector<double> grid =
          config.grid ? *config.grid : default_grid(kind, base.mode);
      const ScanResult result = scan(scan_parameter_for(kind), grid, base);
      const std::string filename = to_string(kind) + ".csv";
      write_scan_csv(out_dir / filename, result);
      outputs.push_back(filename);
      manifest["config"] = resolved_config_json(config, out_dir, base.gamma_in, base.gamma_out);
      manifest["model"] = model_json(base.model, kind);
      manifest["mode"] = to_string(base.mode);
      manifest["grid"] = grid;
      manifest["construction"] = construction_note(kind, base.mode);
      break;
    }
  }

  manifest["outputs"] = outputs;
  write_manifest(out_dir / "manifest.json", manifest);
  outputs.push_back("manifest.json");

  if (!options.quiet)
    for (const std::string& name : outputs)
      std::cout << "wrote " << (out_dir / name).string() << '\n';
}

std::vector<std::string> validate_scenario(const ScenarioConfig& config) {
  config.chain.validate();
  const ScenarioKind kind = config.scenario;
  std::vector<std::string> report;
  report.push_back("scenario: " + to_string(kind));

  std::string chain_line = "chain: ";
  chain_line += kind == ScenarioKind::length_scan
                    ? "n_atoms from grid"
                    : "n_atoms=" + std::to_string(config.chain.n_atoms);
  chain_line += ", omega0=" + format_double(config.chain.omega0);
  chain_line += kind == ScenarioKind::step_scan ? ", step from grid"
                                                : ", step=" + format_double(config.chain.step);
  report.push_back(chain_line);

  if (is_scan_scenario(kind)) {
    const CouplingMode mode = config.environment.mode;
    const std::vector<double> grid = config.grid ? *config.grid : default_grid(kind, mode);
    report.push_back("grid: " + std::to_string(grid.size()) + " points in [" +
                     format_double(grid.front()) + ", " + format_double(grid.back()) + "]");
    const bool quadrature = std::holds_alternative<QuadratureModel>(*config.environment.model);
    report.push_back("environment: inline " +
                     std::string(quadrature ? "quadrature" : "spp_chain") + " model, " +
                     to_string(mode) + ", gamma_in=" +
                     format_double(config.gamma_in.value_or(default_drive)) + ", gamma_out=" +
                     format_double(config.gamma_out.value_or(default_drive)));
    report.push_back("construction: " + construction_note(kind, mode));
    return report;
  }

  const RateSet rates = resolve_environment(config);
  if (kind == ScenarioKind::bias_compare && rates.mode != CouplingMode::unidirectional)
    throw ConfigError("bias_compare needs a unidirectional environment");

  std::string env_line = "environment: " + to_string(rates.mode);
  if (rates.mode == CouplingMode::unidirectional)
    env_line += ", bias " + to_string(rates.bias);
  env_line += ", gamma_in=" + format_double(rates.gamma_in) +
              ", gamma_out=" + format_double(rates.gamma_out);
  report.push_back(env_line);

  if (uses_trajectory(kind)) {
    report.push_back("initial_state: " + resolved_initial_state(config));
    report.push_back("time: t_end=" + format_double(config.t_end) +
                     ", samples=" + std::to_string(config.samples));
  }

  const std::vector<std::string> findings = validate_rates(rates, rates.mode);
  if (findings.empty()) {
    report.push_back("rates: no findings");
  } else {
    for (const std::string& finding : findings) report.push_back("rates: " + finding);
  }
  return report;
}

}  // namespace cascade
